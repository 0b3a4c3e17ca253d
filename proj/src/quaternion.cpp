#include "qmcert/quaternion.hpp"

#include <algorithm>

#include "qmcert/primes.hpp"

namespace qmcert {

namespace {

// p-adic valuation of a nonzero rational
long val_p(const Rat& a, const Int& p)
{
    long v = 0;
    Int num(a.get_num()), den(a.get_den());
    while (divisible(num, p)) {
        num = divexact(num, p);
        ++v;
    }
    while (divisible(den, p)) {
        den = divexact(den, p);
        --v;
    }
    return v;
}

// unit part u = a / p^v as a residue mod m (m a power of p or any modulus
// coprime to the denominator after stripping p)
Int unit_part_mod(const Rat& a, const Int& p, long v, const Int& m)
{
    Int num(a.get_num()), den(a.get_den());
    for (long i = 0; i < v; ++i) num = divexact(num, p);
    for (long i = 0; i < -v; ++i) den = divexact(den, p);
    return mod_floor(num * invmod(mod_floor(den, m), m), m);
}

int eps_mod2(const Int& u_mod8) { return (u_mod8 == 3 || u_mod8 == 7) ? 1 : 0; }  // (u-1)/2
int omega_mod2(const Int& u_mod8) { return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0; }  // (u^2-1)/8

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v)
{
    if (sign(a) == 0 || sign(b) == 0) throw input_error("hilbert_symbol: arguments must be nonzero");
    if (v.infinite) return (sign(a) < 0 && sign(b) < 0) ? -1 : 1;
    const Int& p = v.p;
    if (!is_prime(p)) throw input_error("hilbert_symbol: place must be a prime or infinity");

    long alpha = val_p(a, p), beta = val_p(b, p);
    if (p == 2) {
        Int u = unit_part_mod(a, p, alpha, 8);
        Int w = unit_part_mod(b, p, beta, 8);
        int e = eps_mod2(u) * eps_mod2(w) + static_cast<int>(alpha & 1) * omega_mod2(w) +
                static_cast<int>(beta & 1) * omega_mod2(u);
        return (e & 1) ? -1 : 1;
    }
    Int u = unit_part_mod(a, p, alpha, p);
    Int w = unit_part_mod(b, p, beta, p);
    int s = 1;
    if ((alpha & 1) && (beta & 1) && mod_floor(p, 4) == 3) s = -s;  // (-1|p)^{alpha beta}
    if (beta & 1) s *= jacobi_symbol(u, p);
    if (alpha & 1) s *= jacobi_symbol(w, p);
    return s;
}

std::vector<Place> ramification_set(const Int& a, const Int& b)
{
    if (sign(a) == 0 || sign(b) == 0) throw input_error("ramification_set: a, b must be nonzero");
    std::vector<Int> cand{Int(2)};
    for (const Int& p : prime_divisors(a))
        if (p != 2) cand.push_back(p);
    for (const Int& p : prime_divisors(b))
        if (p != 2 && std::find(cand.begin(), cand.end(), p) == cand.end()) cand.push_back(p);
    std::sort(cand.begin(), cand.end());

    std::vector<Place> ram;
    for (const Int& p : cand)
        if (hilbert_symbol(Rat(a), Rat(b), Place::finite(p)) == -1) ram.push_back(Place::finite(p));
    if (hilbert_symbol(Rat(a), Rat(b), Place::at_infinity()) == -1)
        ram.push_back(Place::at_infinity());
    if (ram.size() % 2 != 0)
        throw internal_error("Hilbert product formula violated: odd ramification set");
    return ram;
}

bool QuaternionAlgebra::is_indefinite() const
{
    return std::none_of(ram.begin(), ram.end(), [](const Place& v) { return v.infinite; });
}

QuaternionAlgebra quaternion_from_presentation(const Int& a, const Int& b)
{
    QuaternionAlgebra B;
    B.a = a;
    B.b = b;
    B.ram = ramification_set(a, b);
    B.d = 1;
    for (const Place& v : B.ram)
        if (!v.infinite) {
            B.d *= v.p;
            B.d_primes.push_back(v.p);
        }
    return B;
}

QuaternionAlgebra find_presentation(const Int& d, long bound)
{
    if (d <= 1) throw input_error("find_presentation: d must be > 1");
    auto dp = prime_divisors(d);
    Int prod = 1;
    for (const Int& p : dp) prod *= p;
    if (prod != d) throw input_error("find_presentation: d must be squarefree");
    if (dp.size() % 2 != 0)
        throw input_error("find_presentation: d needs an even number of prime factors");

    std::vector<Place> target;
    for (const Int& p : dp) target.push_back(Place::finite(p));

    for (long lim = bound;; lim *= 2) {
        for (long s = 2; s <= 2 * lim; ++s) {
            for (long a = -(s - 1); a <= s - 1; ++a) {
                if (a == 0) continue;
                long babs = s - std::labs(a);
                if (babs == 0 || std::labs(a) > lim || babs > lim) continue;
                for (long b : {-babs, babs}) {
                    auto ram = ramification_set(Int(a), Int(b));
                    if (ram == target) return quaternion_from_presentation(Int(a), Int(b));
                }
            }
        }
    }
}

namespace {

// does the prime p split in Q(sqrt(-q))?
bool splits_in_imag_quad(const Int& p, const Int& q)
{
    if (p == 2) return mod_floor(q, 8) == 7;  // -q = 1 mod 8
    if (divisible(q, p)) return false;        // ramified
    return jacobi_symbol(mod_floor(Int(-q), p), p) == 1;
}

}  // namespace

bool nonsplit_over_imag_quad(const QuaternionAlgebra& B, const Int& q)
{
    if (!is_prime(q)) throw input_error("nonsplit_over_imag_quad: q must be prime");
    return std::any_of(B.d_primes.begin(), B.d_primes.end(),
                       [&](const Int& p) { return splits_in_imag_quad(p, q); });
}

CongruenceClasses congruence_classes_nonsplit(const Int& d)
{
    QuaternionAlgebra B = find_presentation(d);
    CongruenceClasses out;
    Int M = 8;
    for (const Int& p : B.d_primes)
        if (p != 2) M *= p;
    out.modulus = M;
    for (Int r = 1; r <= M; ++r) {
        if (gcd(r, M) == 1) {
            // class-level evaluation: the splitting conditions depend only on
            // r mod 8 and r mod p for odd p | d
            bool nonsplit = false;
            for (const Int& p : B.d_primes) {
                if (p == 2) {
                    if (mod_floor(r, 8) == 7) nonsplit = true;
                } else if (jacobi_symbol(mod_floor(Int(-r), p), p) == 1) {
                    nonsplit = true;
                }
            }
            if (nonsplit) out.residues.push_back(r);
        } else if (is_prime(r)) {
            // a class sharing a factor with M contains at most the prime r itself
            if (nonsplit_over_imag_quad(B, r)) out.residues.push_back(r);
        }
    }
    return out;
}

bool splits_over_K(const QuaternionAlgebra& B, const NumberField& K)
{
    for (const Int& p : B.d_primes) {
        SplittingData sd = K.splitting_data(p);
        for (auto [e, f] : sd.factors)
            if ((e * f) % 2 != 0) return false;
    }
    return true;
}

}  // namespace qmcert
