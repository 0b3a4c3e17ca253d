#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle_hilbert.hpp"
#include "qmcert/fieldspec.hpp"
#include "qmcert/primes.hpp"
#include "qmcert/quaternion.hpp"

using namespace qmcert;

namespace {
std::string fields_dir() { return std::string(QMCERT_DATA_DIR) + "/fields/"; }
}

TEST_CASE("hilbert_symbol: fixed values from the conic models")
{
    CHECK(hilbert_symbol(Rat(-1), Rat(-3), Place::finite(3)) == -1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-2), Place::finite(2)) == -1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-3), Place::finite(5)) == 1);
    CHECK(hilbert_symbol(Rat(1), Rat(-17), Place::finite(2)) == 1);   // square first slot
    CHECK(hilbert_symbol(Rat(1), Rat(7), Place::at_infinity()) == 1);
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), Place::at_infinity()) == -1);
    CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), Place::finite(3)), input_error);
}

TEST_CASE("hilbert_symbol: rational arguments and symmetry/bimultiplicativity")
{
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long> d(-60, 60);
    std::vector<Place> places{Place::at_infinity(), Place::finite(2), Place::finite(3),
                              Place::finite(5), Place::finite(7), Place::finite(13)};
    for (int i = 0; i < 800; ++i) {
        long an = d(rng), ad = d(rng), bn = d(rng), cn = d(rng);
        if (!an || !ad || !bn || !cn) continue;
        Rat a(an, ad), b(bn), c(cn);
        a.canonicalize();
        for (const Place& v : places) {
            CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
            CHECK(hilbert_symbol(a, b * c, v) ==
                  hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            // scaling by squares changes nothing
            CHECK(hilbert_symbol(a * a * b, c, v) == hilbert_symbol(b, c, v));
        }
    }
}

TEST_CASE("hilbert_symbol: product formula over all places, 2000 random pairs")
{
    std::mt19937_64 rng(31415);
    std::uniform_int_distribution<long> d(-500, 500);
    int done = 0;
    while (done < 2000) {
        long a = d(rng), b = d(rng);
        if (!a || !b) continue;
        int prod = hilbert_symbol(Rat(a), Rat(b), Place::at_infinity());
        for (const Int& p : prime_divisors(Int(2) * a * b))
            prod *= hilbert_symbol(Rat(a), Rat(b), Place::finite(p));
        CHECK(prod == 1);
        ++done;
    }
}

TEST_CASE("hilbert_symbol agrees with p-adic brute force, |a|,|b| <= 30, p <= 50")
{
    for (uint64_t p : primes_up_to(50)) {
        for (long a = -30; a <= 30; ++a) {
            if (a == 0) continue;
            for (long b = a; b <= 30; ++b) {  // symmetry halves the work
                if (b == 0) continue;
                bool solvable = testing::hilbert_brute_force(a, b, static_cast<long>(p));
                int sym = hilbert_symbol(Rat(a), Rat(b), Place::finite(Int(p)));
                INFO("a=", a, " b=", b, " p=", p);
                CHECK((sym == 1) == solvable);
            }
        }
    }
    // infinite place against the sign-based oracle
    for (long a = -30; a <= 30; ++a)
        for (long b = -30; b <= 30; ++b) {
            if (!a || !b) continue;
            CHECK((hilbert_symbol(Rat(a), Rat(b), Place::at_infinity()) == 1) ==
                  testing::hilbert_brute_force_real(a, b));
        }
}

TEST_CASE("ramification_set: fixed examples")
{
    auto ram = ramification_set(-1, -1);  // Hamilton quaternions
    REQUIRE(ram.size() == 2);
    CHECK(ram[0] == Place::finite(2));
    CHECK(ram[1] == Place::at_infinity());

    auto r2 = ramification_set(-1, 3);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == Place::finite(2));
    CHECK(r2[1] == Place::finite(3));

    CHECK(ramification_set(1, 1).empty());
}

TEST_CASE("find_presentation: d = 6, 10, 22 verified by ramification_set")
{
    for (long dl : {6L, 10L, 22L}) {
        QuaternionAlgebra B = find_presentation(Int(dl));
        CHECK(B.d == dl);
        CHECK(B.is_indefinite());
        auto ram = ramification_set(B.a, B.b);
        REQUIRE(ram.size() == B.d_primes.size());
        for (size_t i = 0; i < ram.size(); ++i) {
            CHECK_FALSE(ram[i].infinite);
            CHECK(ram[i].p == B.d_primes[i]);
        }
    }
    // deterministic scan order: d = 6 finds (-1, 3) first
    QuaternionAlgebra B6 = find_presentation(6);
    CHECK(B6.a == -1);
    CHECK(B6.b == 3);
    CHECK_THROWS_AS(find_presentation(12), input_error);  // not squarefree
    CHECK_THROWS_AS(find_presentation(30), input_error);  // three prime factors
}

TEST_CASE("find_presentation: d = 15 is definite-compatible and succeeds")
{
    // 15 = 3 * 5 has an even number of prime factors, so a presentation exists
    QuaternionAlgebra B = find_presentation(15);
    CHECK(B.d == 15);
    CHECK(B.is_indefinite());
}

TEST_CASE("nonsplit_over_imag_quad: fixed examples")
{
    QuaternionAlgebra B6 = find_presentation(6);
    QuaternionAlgebra B10 = find_presentation(10);
    CHECK(nonsplit_over_imag_quad(B6, 23));   // 23 = 23 mod 24
    CHECK(nonsplit_over_imag_quad(B10, 11));  // 11 mod 40 in the list
    CHECK_FALSE(nonsplit_over_imag_quad(B6, 13));  // 13 mod 24 not in the list
}

TEST_CASE("congruence_classes_nonsplit reproduces the mod 24/40/88 lists")
{
    auto c6 = congruence_classes_nonsplit(6);
    CHECK(c6.modulus == 24);
    CHECK(c6.residues == std::vector<Int>{2, 5, 7, 11, 17, 23});

    auto c10 = congruence_classes_nonsplit(10);
    CHECK(c10.modulus == 40);
    CHECK(c10.residues == std::vector<Int>{1, 7, 9, 11, 19, 21, 23, 29, 31, 39});

    auto c22 = congruence_classes_nonsplit(22);
    CHECK(c22.modulus == 88);
    CHECK(c22.residues ==
          std::vector<Int>{2,  7,  13, 15, 17, 19, 21, 23, 29, 31, 35, 39, 41,
                           43, 47, 51, 57, 61, 63, 65, 71, 73, 79, 83, 85, 87});
}

TEST_CASE("congruence classes are constant on classes: 10 primes per class agree")
{
    for (long dl : {6L, 10L, 22L}) {
        QuaternionAlgebra B = find_presentation(Int(dl));
        auto cc = congruence_classes_nonsplit(Int(dl));
        for (Int r = 1; r <= cc.modulus; ++r) {
            if (gcd(r, cc.modulus) != 1) continue;
            bool in_list =
                std::find(cc.residues.begin(), cc.residues.end(), r) != cc.residues.end();
            int found = 0;
            Int q = r;
            while (found < 10) {
                if (is_prime(q)) {
                    CHECK(nonsplit_over_imag_quad(B, q) == in_list);
                    ++found;
                }
                q += cc.modulus;
            }
        }
    }
}

TEST_CASE("splits_over_K: worked-example verdicts")
{
    NumberField Kz5 = NumberField::verify(load_field_spec(fields_dir() + "q_zeta5.json"));
    NumberField K1 = NumberField::verify(load_field_spec(fields_dir() + "q_sqrt3_sqrt-5.json"));
    NumberField Kz17 = NumberField::verify(load_field_spec(fields_dir() + "q_zeta17.json"));

    QuaternionAlgebra B6 = find_presentation(6);
    QuaternionAlgebra B10 = find_presentation(10);
    QuaternionAlgebra B22 = find_presentation(22);

    CHECK_FALSE(splits_over_K(B22, Kz5));  // 11 splits completely in Q(zeta5)
    CHECK(splits_over_K(B6, K1));
    CHECK(splits_over_K(B10, Kz17));
    CHECK(splits_over_K(B6, Kz5));
    CHECK(splits_over_K(B10, Kz5));
    CHECK(splits_over_K(B6, Kz17));
    CHECK(splits_over_K(B22, Kz17));
    CHECK(splits_over_K(B10, K1));
    CHECK(splits_over_K(B22, K1));
}
