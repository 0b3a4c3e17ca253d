#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmcert/fieldspec.hpp"
#include "qmcert/numberfield.hpp"
#include "qmcert/primes.hpp"

using namespace qmcert;

namespace {

std::string fields_dir() { return std::string(QMCERT_DATA_DIR) + "/fields/"; }

const NumberField& field(const std::string& file)
{
    static std::map<std::string, NumberField> cache;
    auto it = cache.find(file);
    if (it == cache.end())
        it = cache.emplace(file, NumberField::verify(load_field_spec(fields_dir() + file))).first;
    return it->second;
}

FieldElement rand_element(const NumberField& K, std::mt19937_64& rng, long bound = 8)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<Rat> c(K.degree());
    for (auto& v : c) v = Rat(d(rng));
    return K.element(c);
}

}  // namespace

TEST_CASE("bundled field specs all verify")
{
    for (const char* f : {"q.json", "q_sqrt-5.json", "q_sqrt3_sqrt-5.json", "q_zeta5.json",
                          "q_zeta17.json"}) {
        const NumberField& K = field(f);
        CHECK(K.report().ok());
    }
    CHECK(field("q.json").degree() == 1);
    CHECK(field("q_zeta17.json").degree() == 16);
}

TEST_CASE("verify: cyclotomic Q(zeta5) passes every check")
{
    const NumberField& K = field("q_zeta5.json");
    for (const auto& c : K.report().checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
    CHECK(K.maximality_status() == MaximalityStatus::Certified);
    CHECK(K.index_in_basis() == 1);
    CHECK(K.basis_disc() == 125);
}

namespace {

FieldSpecData power_basis_quartic()
{
    // x^4+4x^2+64 with the power basis Z[theta] (index 128 in the maximal order)
    FieldSpecData d;
    d.defining_poly = IntPolynomial{64, 0, 4, 0, 1};
    d.automorphisms = {{Rat(0), Rat(1)},
                       {Rat(0), Rat(1, 2), Rat(0), Rat(1, 8)},
                       {Rat(0), Rat(-1, 2), Rat(0), Rat(-1, 8)},
                       {Rat(0), Rat(-1)}};
    d.quadratic_subfields = {{Int(3), {Rat(0), Rat(1, 4), Rat(0), Rat(-1, 16)}},
                             {Int(-5), {Rat(0), Rat(3, 4), Rat(0), Rat(1, 16)}},
                             {Int(-15), {Rat(1), Rat(0), Rat(1, 2), Rat(0)}}};
    return d;
}

}  // namespace

TEST_CASE("verify: power basis for x^4+4x^2+64 flags non-maximality at 2")
{
    FieldSpecData d = power_basis_quartic();
    NumberField K = NumberField::verify(d);
    // Z[theta] has index 128 inside the maximal order; Dedekind refutes
    // 2-maximality, so the power basis is certified non-maximal at 2
    CHECK(K.maximality_status() == MaximalityStatus::Refuted);
    REQUIRE(K.maximality_refuted_at().size() == 1);
    CHECK(K.maximality_refuted_at()[0] == 2);
    CHECK(K.ramified_set_is_upper_bound());
}

TEST_CASE("verify: wrong automorphism count fails with 'Galois count'")
{
    FieldSpecData d;
    d.defining_poly = IntPolynomial{64, 0, 4, 0, 1};
    d.automorphisms = {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};  // only 2 of 4
    try {
        NumberField::verify(d);
        FAIL("expected verification_error");
    } catch (const verification_error& e) {
        const CheckResult* c = e.report.find("Galois count");
        REQUIRE(c != nullptr);
        CHECK_FALSE(c->passed);
    }
}

TEST_CASE("verify: non-automorphism polynomial is rejected")
{
    FieldSpecData d;
    d.defining_poly = IntPolynomial{5, 0, 1};
    d.automorphisms = {{Rat(0), Rat(1)}, {Rat(1), Rat(1)}};  // theta+1 is not a root
    CHECK_THROWS_AS(NumberField::verify(d), verification_error);
}

TEST_CASE("element_norm: fixed examples")
{
    const NumberField& K5 = field("q_sqrt-5.json");
    CHECK(K5.norm_integral(K5.one()) == 1);
    // 2 + 3*sqrt(-5): a^2 + 5 b^2 = 4 + 45
    CHECK(K5.norm_integral(K5.element({Rat(2), Rat(3)})) == 49);

    const NumberField& Kz = field("q_zeta5.json");
    FieldElement x = Kz.sub(Kz.one(), Kz.theta());  // 1 - zeta
    CHECK(Kz.norm_integral(x) == 5);
}

TEST_CASE("element_norm: multiplicative on 500 random pairs per field")
{
    std::mt19937_64 rng(5150);
    for (const char* f : {"q_sqrt-5.json", "q_zeta5.json", "q_sqrt3_sqrt-5.json"}) {
        const NumberField& K = field(f);
        for (int i = 0; i < 500; ++i) {
            FieldElement a = rand_element(K, rng), b = rand_element(K, rng);
            CHECK(K.norm(K.mul(a, b)) == K.norm(a) * K.norm(b));
        }
    }
}

TEST_CASE("apply_automorphism: identity, zeta -> zeta^2, norm invariance")
{
    const NumberField& K = field("q_zeta5.json");
    std::mt19937_64 rng(808);
    FieldElement x = rand_element(K, rng);
    CHECK(K.apply_automorphism(K.identity_automorphism(), x) == x);

    // sigma: zeta -> zeta^2 is the automorphism with g = x^2
    FieldElement zeta = K.theta();
    FieldElement z2 = K.mul(zeta, zeta);
    CHECK(K.apply_automorphism(1, zeta) == z2);

    for (int i = 0; i < 100; ++i) {
        FieldElement a = rand_element(K, rng);
        unsigned idx = static_cast<unsigned>(rng() % K.automorphism_count());
        CHECK(K.norm(K.apply_automorphism(idx, a)) == K.norm(a));
    }
}

TEST_CASE("automorphism composition stays in the verified group")
{
    for (const char* f : {"q_sqrt3_sqrt-5.json", "q_zeta5.json", "q_zeta17.json"}) {
        const NumberField& K = field(f);
        unsigned n = K.automorphism_count();
        std::mt19937_64 rng(1);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                unsigned k = K.compose(i, j);
                CHECK(k < n);
                // spot-check on an element: sigma_i(sigma_j(x)) = sigma_k(x)
                FieldElement x = rand_element(K, rng, 3);
                CHECK(K.apply_automorphism(i, K.apply_automorphism(j, x)) ==
                      K.apply_automorphism(k, x));
            }
    }
}

TEST_CASE("splitting_data reproduces the quartic/cyclotomic tables")
{
    const NumberField& K1 = field("q_sqrt3_sqrt-5.json");
    auto t = [](const NumberField& K, long p) {
        SplittingData s = K.splitting_data(Int(p));
        REQUIRE(s.is_uniform());
        return std::tuple<unsigned, unsigned, unsigned>{s.e(), s.f(), s.g};
    };
    using T = std::tuple<unsigned, unsigned, unsigned>;
    CHECK(t(K1, 3) == T{2, 1, 2});
    CHECK(t(K1, 2) == T{2, 1, 2});  // via the verified user factorization
    CHECK(t(K1, 11) == T{1, 2, 2});
    CHECK(t(K1, 5) == T{2, 2, 1});

    const NumberField& K2 = field("q_zeta5.json");
    CHECK(t(K2, 3) == T{1, 4, 1});
    CHECK(t(K2, 2) == T{1, 4, 1});
    CHECK(t(K2, 11) == T{1, 1, 4});
    CHECK(t(K2, 5) == T{4, 1, 1});

    const NumberField& K3 = field("q_zeta17.json");
    CHECK(t(K3, 3) == T{1, 16, 1});
    CHECK(t(K3, 2) == T{1, 8, 2});
    CHECK(t(K3, 11) == T{1, 16, 1});
    CHECK(t(K3, 5) == T{1, 16, 1});
    CHECK(t(K3, 17) == T{16, 1, 1});
}

TEST_CASE("splitting_data: index divisor without user factorization errors")
{
    // with the full integral basis, 2 divides [O : Z[theta]] = 128; a spec
    // without the p=2 factorization cannot answer splitting queries at 2
    FieldSpecData d = load_field_spec(fields_dir() + "q_sqrt3_sqrt-5.json");
    d.prime_factorizations.clear();
    NumberField K = NumberField::verify(d);
    CHECK(K.index_in_basis() == 128);
    CHECK_THROWS_WITH_AS(K.splitting_data(2), doctest::Contains("index divisor"), input_error);
    // the power-basis order has index 1 over Z[theta]; factor_mod_p applies
    NumberField Kpow = NumberField::verify(power_basis_quartic());
    CHECK(Kpow.index_in_basis() == 1);
    CHECK(Kpow.splitting_data(2).sum_ef() == 4);
}

TEST_CASE("sum e_i f_i = n for all p <= 100 on every bundled field")
{
    for (const char* f : {"q.json", "q_sqrt-5.json", "q_sqrt3_sqrt-5.json", "q_zeta5.json",
                          "q_zeta17.json"}) {
        const NumberField& K = field(f);
        for (uint64_t p : primes_up_to(100))
            CHECK(K.splitting_data(Int(p)).sum_ef() == K.degree());
    }
}

TEST_CASE("splits_completely: fixed examples and congruence agreement")
{
    const NumberField& K1 = field("q_sqrt3_sqrt-5.json");
    CHECK(K1.splits_completely(23));
    const NumberField& K2 = field("q_zeta5.json");
    CHECK(K2.splits_completely(11));
    CHECK_FALSE(K2.splits_completely(7));

    // agreement with factorization-shaped definition for p <= 100
    for (uint64_t p : primes_up_to(100)) {
        SplittingData s = K1.splitting_data(Int(p));
        CHECK(K1.splits_completely(Int(p)) == s.splits_completely(K1.degree()));
    }

    // congruence characterization mod 60 / mod 5 / mod 17 up to 1000
    for (uint64_t q : primes_up_to(1000)) {
        unsigned r60 = q % 60;
        bool expect1 = r60 == 1 || r60 == 23 || r60 == 47 || r60 == 49;
        CHECK(K1.splits_completely(Int(q)) == expect1);
        CHECK(K2.splits_completely(Int(q)) == (q % 5 == 1));
        CHECK(field("q_zeta17.json").splits_completely(Int(q)) == (q % 17 == 1));
    }
}

TEST_CASE("ramified_primes: fixed examples")
{
    CHECK(field("q_zeta5.json").ramified_primes() == std::vector<Int>{5});
    CHECK(field("q_sqrt3_sqrt-5.json").ramified_primes() == std::vector<Int>{2, 3, 5});
    CHECK(field("q_sqrt-5.json").ramified_primes() == std::vector<Int>{2, 5});
    CHECK(field("q.json").ramified_primes().empty());
}

TEST_CASE("ideal_from_prime: norms and membership")
{
    const NumberField& K = field("q_sqrt-5.json");
    IntegralIdeal I = K.ideal_from_prime(7, 3);  // 3^2+5 = 14 = 0 mod 7
    CHECK(I.norm() == 7);
    CHECK(K.ideal_contains(I, K.mul_int(K.one(), 7)));
    CHECK(K.ideal_contains(I, K.sub(K.theta(), K.mul_int(K.one(), 3))));
    CHECK_FALSE(K.ideal_contains(I, K.one()));
    CHECK_THROWS_AS(K.ideal_from_prime(7, 2), input_error);  // f(2) = 9 != 0 mod 7

    const NumberField& Kz = field("q_zeta5.json");
    CHECK(Kz.ideal_from_prime(11, 4).norm() == 11);
}

TEST_CASE("ideal arithmetic: unit ideal, ramified square, norm multiplicativity")
{
    const NumberField& K = field("q_sqrt-5.json");
    IntegralIdeal I = K.ideal_from_prime(7, 3);
    CHECK(K.ideal_multiply(I, K.whole_ring()) == I);

    // (2, 1+sqrt-5)^2 = (2)
    IntegralIdeal P2 = K.ideal_from_generators(
        {K.mul_int(K.one(), 2), K.add(K.one(), K.theta())});
    IntegralIdeal sq = K.ideal_power(P2, 2);
    IntegralIdeal two = K.ideal_from_generators({K.mul_int(K.one(), 2)});
    CHECK(sq == two);

    // norm multiplicativity on 100 random degree-1 prime pairs
    std::mt19937_64 rng(4004);
    std::vector<std::pair<Int, Int>> prs;  // (q, root)
    for (uint64_t q : primes_up_to(500)) {
        if (!K.splits_completely(Int(q))) continue;
        auto roots = K.roots_of_f_mod(Int(q));
        for (const auto& r : roots) prs.emplace_back(Int(q), r);
    }
    REQUIRE(prs.size() >= 15);
    for (int i = 0; i < 100; ++i) {
        auto& a = prs[rng() % prs.size()];
        auto& b = prs[rng() % prs.size()];
        IntegralIdeal A = K.ideal_from_prime(a.first, a.second);
        IntegralIdeal B = K.ideal_from_prime(b.first, b.second);
        CHECK(K.ideal_multiply(A, B).norm() == A.norm() * B.norm());
    }
}

TEST_CASE("verify_principal_generator: fixed examples")
{
    const NumberField& K = field("q_sqrt-5.json");
    // frak-q above 7 with theta = 4 (the conjugate of root 3); alpha = 2+3*sqrt-5
    IntegralIdeal q7 = K.ideal_from_prime(7, 4);
    IntegralIdeal q7sq = K.ideal_power(q7, 2);
    FieldElement alpha = K.element({Rat(2), Rat(3)});
    CHECK(K.verify_principal_generator(q7sq, alpha));
    CHECK(K.verify_principal_generator(K.whole_ring(), K.one()));
    // norm mismatch: alpha has norm 49, the prime has norm 7
    CHECK_FALSE(K.verify_principal_generator(q7, alpha));
    // zero is rejected
    CHECK_FALSE(K.verify_principal_generator(q7sq, K.zero()));
}

TEST_CASE("verify_prime_factorization: ramified, split, and broken claims")
{
    const NumberField& K = field("q_sqrt-5.json");
    IntegralIdeal P2 = K.ideal_from_generators(
        {K.mul_int(K.one(), 2), K.add(K.one(), K.theta())});
    SplittingData s2 = K.verify_prime_factorization(2, {{P2, 2}});
    CHECK(s2.e() == 2);
    CHECK(s2.f() == 1);
    CHECK(s2.g == 1);

    IntegralIdeal A = K.ideal_from_prime(7, 3), B = K.ideal_from_prime(7, 4);
    SplittingData s7 = K.verify_prime_factorization(7, {{A, 1}, {B, 1}});
    CHECK(s7.e() == 1);
    CHECK(s7.f() == 1);
    CHECK(s7.g == 2);

    // wrong exponent -> product mismatch
    CHECK_THROWS_WITH_AS(K.verify_prime_factorization(2, {{P2, 1}}),
                         doctest::Contains("product mismatch"), input_error);
    // inert prime: O/11 = F_121 certified via an irreducible quadratic
    IntegralIdeal eleven = K.ideal_from_generators({K.mul_int(K.one(), 11)});
    SplittingData s11 = K.verify_prime_factorization(11, {{eleven, 1}});
    CHECK(s11.f() == 2);
    CHECK(s11.g == 1);
}

TEST_CASE("class generators verified for all bundled fields")
{
    for (const char* f : {"q.json", "q_sqrt-5.json", "q_sqrt3_sqrt-5.json", "q_zeta5.json",
                          "q_zeta17.json"}) {
        const NumberField& K = field(f);
        REQUIRE(K.class_generators().size() == 1);
        const auto& cg = K.class_generators()[0];
        IntegralIdeal qh = K.ideal_power(cg.prime_ideal, K.class_number());
        CHECK(K.verify_principal_generator(qh, cg.alpha));
    }
}

TEST_CASE("quadratic subfield witnesses and counts")
{
    const NumberField& K1 = field("q_sqrt3_sqrt-5.json");
    CHECK(K1.quadratic_subfields().size() == 3);
    CHECK(K1.index2_subgroup_count() == 3);
    CHECK(K1.sqrt_witness(-15).has_value());
    CHECK_FALSE(K1.sqrt_witness(7).has_value());

    CHECK(field("q_zeta5.json").index2_subgroup_count() == 1);
    CHECK(field("q_zeta17.json").index2_subgroup_count() == 1);
    CHECK(field("q.json").index2_subgroup_count() == 0);

    // witness really squares to m
    for (const auto& qs : K1.quadratic_subfields()) {
        FieldElement sq = K1.mul(qs.witness, qs.witness);
        CHECK(sq == K1.mul_int(K1.one(), qs.m));
    }
}

TEST_CASE("real places: signature via Sturm")
{
    CHECK(field("q.json").has_real_place());
    CHECK_FALSE(field("q_sqrt-5.json").has_real_place());
    CHECK_FALSE(field("q_sqrt3_sqrt-5.json").has_real_place());
    CHECK_FALSE(field("q_zeta5.json").has_real_place());
    CHECK_FALSE(field("q_zeta17.json").has_real_place());
}

TEST_CASE("degenerate field Q: end-to-end basics")
{
    const NumberField& K = field("q.json");
    CHECK(K.degree() == 1);
    CHECK(K.splits_completely(9973));
    CHECK(K.norm_integral(K.element({Rat(-7)})) == -7);
    SplittingData s = K.splitting_data(13);
    CHECK(s.e() == 1);
    CHECK(s.f() == 1);
    CHECK(s.g == 1);
    IntegralIdeal five = K.ideal_from_prime(5, 0);
    CHECK(five.norm() == 5);
    CHECK(K.verify_principal_generator(five, K.element({Rat(5)})));
}

TEST_CASE("field spec file parse errors carry context")
{
    CHECK_THROWS_AS(parse_field_spec("{ not json"), input_error);
    CHECK_THROWS_AS(parse_field_spec("{}"), input_error);  // missing defining_poly
    CHECK_THROWS_AS(parse_field_spec(R"({"defining_poly": [1,1], "automorphisms": "x"})"),
                    input_error);
}
