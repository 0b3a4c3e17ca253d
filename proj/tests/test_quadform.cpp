#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qmcert/fieldspec.hpp"
#include "qmcert/quadform.hpp"

using namespace qmcert;

namespace {
std::string fields_dir() { return std::string(QMCERT_DATA_DIR) + "/fields/"; }
}

TEST_CASE("class_number_imag: fixed examples")
{
    CHECK(class_number_imag(-4) == 1);    // only (1,0,1)
    CHECK(class_number_imag(-20) == 2);   // (1,0,5), (2,2,3)
    CHECK(class_number_imag(-15) == 2);   // (1,1,4), (2,1,2)
    CHECK(class_number_imag(-23) == 3);
    CHECK_THROWS_AS(class_number_imag(-12), input_error);  // 3*4: not fundamental
    CHECK_THROWS_AS(class_number_imag(-9), input_error);
    CHECK_THROWS_AS(class_number_imag(5), input_error);
}

TEST_CASE("reduced forms of -20 are exactly the two classics")
{
    auto forms = reduced_forms(-20);
    REQUIRE(forms.size() == 2);
    CHECK(forms[0] == QuadraticForm{1, 0, 5});
    CHECK(forms[1] == QuadraticForm{2, 2, 3});
}

TEST_CASE("class number: dual-path count and reduction sampling, |D| <= 2000")
{
    std::mt19937_64 rng(20260811);
    int ones = 0;
    std::vector<long> one_list;
    for (long Dl = -3; Dl >= -2000; --Dl) {
        Int D(Dl);
        if (!is_fundamental_discriminant(D)) continue;
        auto forms = reduced_forms(D);

        // independent route: iterate (a, c) pairs and solve for b
        long count2 = 0;
        for (long a = 1; a * a * 3 <= -Dl; ++a) {
            for (long c = a; 4 * a * c <= a * a - Dl; ++c) {
                long b2 = 4 * a * c + Dl;
                if (b2 < 0) continue;
                long b = static_cast<long>(std::sqrt(static_cast<double>(b2)) + 0.5);
                if (b * b != b2 || b > a) continue;
                // primitive + boundary convention
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                if (b == 0 || b == a || a == c)
                    count2 += 1;  // only +b counts
                else
                    count2 += 2;  // both signs reduced
            }
        }
        CHECK(static_cast<long>(forms.size()) == count2);

        // reduction of random non-reduced forms lands in the enumerated set
        std::set<QuadraticForm> table(forms.begin(), forms.end());
        for (int t = 0; t < 8; ++t) {
            const QuadraticForm& base = forms[rng() % forms.size()];
            // apply a random SL2(Z) translation/flip chain to unreduce
            QuadraticForm g = base;
            for (int s = 0; s < 6; ++s) {
                long k = static_cast<long>(rng() % 7) - 3;
                // (a, b, c) -> (a, b + 2ka, c') translation
                Int bn = g.b + 2 * k * g.a;
                Int cn = divexact(bn * bn - D, 4 * g.a);
                g = {g.a, bn, cn};
                if (rng() % 2) g = {g.c, Int(-g.b), g.a};  // flip
            }
            CHECK(g.discriminant() == D);
            QuadraticForm red = reduce_form(g);
            CHECK(red.is_reduced());
            CHECK(table.count(red) == 1);
            CHECK(red == base);  // reduction is a class invariant
        }

        if (forms.size() == 1) {
            ++ones;
            one_list.push_back(Dl);
        }
    }
    // the nine class-number-one fundamental discriminants
    CHECK(ones == 9);
    CHECK(one_list == std::vector<long>{-3, -4, -7, -8, -11, -19, -43, -67, -163});
}

TEST_CASE("quad_field_ramification case analysis")
{
    CHECK(quad_field_ramification(-5, 2) == 2);   // disc -20
    CHECK(quad_field_ramification(-5, 5) == 2);
    CHECK(quad_field_ramification(-5, 3) == 1);
    CHECK(quad_field_ramification(-15, 2) == 1);  // disc -15 odd
    CHECK(quad_field_ramification(-15, 3) == 2);
    CHECK(quad_field_ramification(3, 2) == 2);    // disc 12
    CHECK(quad_field_ramification(17, 2) == 1);   // disc 17
}

TEST_CASE("hcf_containment_check: biquadratic field clears branch (c) twice")
{
    NumberField K = NumberField::verify(load_field_spec(fields_dir() + "q_sqrt3_sqrt-5.json"));
    HcfVerdict v = hcf_containment_check(K);
    CHECK(v.outcome == HcfOutcome::AllClear);
    int branch_c = 0;
    for (const auto& tr : v.trace) {
        CHECK(tr.cleared);
        if (tr.branch == 'c') ++branch_c;
        CHECK(tr.class_no == 2);  // h(-20) = h(-15) = 2
    }
    CHECK(branch_c == 2);
    CHECK(v.trace.size() == 2);  // Q(sqrt 3) is real, not traced
}

TEST_CASE("hcf_containment_check: cyclotomic fields have no imaginary quadratic subfield")
{
    for (const char* f : {"q_zeta5.json", "q_zeta17.json", "q.json"}) {
        NumberField K = NumberField::verify(load_field_spec(fields_dir() + f));
        HcfVerdict v = hcf_containment_check(K);
        CHECK(v.outcome == HcfOutcome::AllClear);
        CHECK(v.trace.empty());
    }
}

TEST_CASE("hcf_containment_check: Q(i) contains its own Hilbert class field")
{
    FieldSpecData d;
    d.name = "Q(i)";
    d.defining_poly = IntPolynomial{1, 0, 1};
    d.automorphisms = {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
    d.quadratic_subfields = {{Int(-1), {Rat(0), Rat(1)}}};
    NumberField K = NumberField::verify(d);
    HcfVerdict v = hcf_containment_check(K);
    CHECK(v.outcome == HcfOutcome::ContainsHcf);
    CHECK(v.subfield_m == -1);
    REQUIRE(v.trace.size() == 1);
    CHECK(v.trace[0].branch == 'a');
}

TEST_CASE("hcf_containment_check: imaginary quadratic with h = 2 is cleared by branch (b)")
{
    NumberField K = NumberField::verify(load_field_spec(fields_dir() + "q_sqrt-5.json"));
    HcfVerdict v = hcf_containment_check(K);
    CHECK(v.outcome == HcfOutcome::AllClear);
    REQUIRE(v.trace.size() == 1);
    CHECK(v.trace[0].branch == 'b');  // 2h = 4 > [K:Q] = 2
}
