#include "qmcert/quadform.hpp"

#include <algorithm>

#include "qmcert/primes.hpp"

namespace qmcert {

bool QuadraticForm::is_primitive() const { return gcd(gcd(a, b), c) == 1; }

bool QuadraticForm::is_reduced() const
{
    Int babs = qmcert::abs(b);
    if (!(babs <= a && a <= c)) return false;
    if ((babs == a || a == c) && sign(b) < 0) return false;
    return true;
}

bool QuadraticForm::operator<(const QuadraticForm& o) const
{
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

QuadraticForm reduce_form(QuadraticForm f)
{
    Int D = f.discriminant();
    if (sign(D) >= 0 || sign(f.a) <= 0)
        throw input_error("reduce_form: needs a positive-definite form");
    while (true) {
        // normalize: translate b into (-a, a], keeping the discriminant
        Int twoa = 2 * f.a;
        Int r = mod_floor(f.a - f.b, twoa);  // in [0, 2a)
        f.b = f.a - r;                       // in (-a, a]
        f.c = divexact(f.b * f.b - D, 4 * f.a);
        if (f.a > f.c) {  // rho step
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        break;
    }
    if (f.a == f.c && sign(f.b) < 0) f.b = -f.b;
    return f;
}

bool is_fundamental_discriminant(const Int& D)
{
    if (sign(D) >= 0) return false;
    Int m4 = mod_floor(D, 4);
    if (m4 == 1) return is_squarefree(D);
    if (m4 == 0) {
        Int q = divexact(D, 4);
        Int qm4 = mod_floor(q, 4);
        return (qm4 == 2 || qm4 == 3) && is_squarefree(q);
    }
    return false;
}

std::vector<QuadraticForm> reduced_forms(const Int& D)
{
    if (!is_fundamental_discriminant(D))
        throw input_error("class_number_imag: D = " + D.get_str() +
                          " is not a negative fundamental discriminant");
    std::vector<QuadraticForm> out;
    // reduced: |b| <= a <= c, so a <= sqrt(|D|/3)
    Int amax = isqrt(Int(-D) / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a; b <= a; ++b) {
            Int num = b * b - D;
            if (!divisible(num, 4 * a)) continue;
            Int c = divexact(num, 4 * a);
            QuadraticForm f{a, b, c};
            if (f.is_reduced() && f.is_primitive()) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int class_number_imag(const Int& D)
{
    return Int(static_cast<long>(reduced_forms(D).size()));
}

unsigned quad_field_ramification(const Int& m, const Int& p)
{
    if (p == 2) {
        // disc = m for m = 1 mod 4, else 4m; 2 ramifies iff 2 | disc
        return mod_floor(m, 4) == 1 ? 1 : 2;
    }
    return divisible(m, p) ? 2 : 1;
}

HcfVerdict hcf_containment_check(const NumberField& K)
{
    HcfVerdict v;
    v.outcome = HcfOutcome::AllClear;
    const Int n(static_cast<long>(K.degree()));

    for (const auto& sub : K.quadratic_subfields()) {
        if (sign(sub.m) >= 0) continue;  // only imaginary quadratic subfields matter
        Int D = mod_floor(sub.m, 4) == 1 ? sub.m : Int(4 * sub.m);
        Int h = class_number_imag(D);
        HcfVerdict::SubfieldTrace tr;
        tr.m = sub.m;
        tr.class_no = h;

        Int twoh = 2 * h;
        if (h == 1) {
            tr.branch = 'a';
            tr.cleared = false;
            tr.note = "h = 1: F is its own Hilbert class field and F lies in K";
            v.trace.push_back(tr);
            v.outcome = HcfOutcome::ContainsHcf;
            v.subfield_m = sub.m;
            v.reason = "K contains Q(sqrt(" + sub.m.get_str() +
                       ")), an imaginary quadratic field of class number one";
            return v;
        }
        if (twoh > n || !divisible(n, twoh)) {
            tr.branch = 'b';
            tr.cleared = true;
            tr.note = "[H(F):Q] = 2h = " + twoh.get_str() + " does not fit in [K:Q] = " +
                      n.get_str();
            v.trace.push_back(tr);
            continue;
        }
        if (twoh == n) {
            tr.branch = 'c';
            // K = H(F) would be unramified over F at every finite prime, so
            // e_p(K) = e_p(F) for all p; a strict increase clears F
            bool cleared = false;
            std::string at;
            for (const Int& p : K.ramified_primes()) {
                unsigned eK = K.ramification_index(p);
                unsigned eF = quad_field_ramification(sub.m, p);
                if (eK > eF) {
                    cleared = true;
                    at = p.get_str();
                    break;
                }
            }
            tr.cleared = cleared;
            tr.note = cleared ? "K/F ramified above p = " + at + ", so K is not H(F)"
                              : "no ramification obstruction found";
            v.trace.push_back(tr);
            if (!cleared) {
                v.outcome = HcfOutcome::Undetermined;
                v.subfield_m = sub.m;
                v.reason = "cannot exclude K = H(Q(sqrt(" + sub.m.get_str() +
                           "))): K/F unramified at every ramified prime of K";
                return v;
            }
            continue;
        }
        // 2h < n and 2h | n
        tr.branch = 'd';
        tr.cleared = false;
        tr.note = "H(F) could sit in a proper intermediate field; not enumerable here";
        v.trace.push_back(tr);
        v.outcome = HcfOutcome::Undetermined;
        v.subfield_m = sub.m;
        v.reason = "intermediate fields of degree 2h = " + twoh.get_str() +
                   " inside [K:Q] = " + n.get_str() + " cannot be enumerated";
        return v;
    }
    v.reason = "no imaginary quadratic subfield of K has its Hilbert class field inside K";
    return v;
}

}  // namespace qmcert
