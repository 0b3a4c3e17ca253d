#include "qmcert/modpoly.hpp"

#include <algorithm>
#include <sstream>

#include "qmcert/primes.hpp"

namespace qmcert {

namespace {
const Int kZero = 0;
}

ModPoly::ModPoly(Int p, std::vector<Int> coeffs) : p_(std::move(p)), c_(std::move(coeffs))
{
    for (auto& v : c_) v = mod_floor(v, p_);
    normalize();
}

void ModPoly::normalize()
{
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
}

ModPoly ModPoly::from_int_poly(const IntPolynomial& f, const Int& p)
{
    return ModPoly(p, f.coeffs());
}

ModPoly ModPoly::x(const Int& p) { return ModPoly(p, {Int(0), Int(1)}); }

ModPoly ModPoly::constant(const Int& p, const Int& c) { return ModPoly(p, {c}); }

const Int& ModPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : kZero; }

bool ModPoly::operator<(const ModPoly& o) const
{
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

ModPoly ModPoly::operator+(const ModPoly& o) const
{
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const
{
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const
{
    if (is_zero() || o.is_zero()) return ModPoly(p_, {});
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const
{
    if (is_zero()) return *this;
    Int inv = invmod(c_.back(), p_);
    std::vector<Int> r(c_);
    for (auto& v : r) v *= inv;
    return ModPoly(p_, std::move(r));
}

std::pair<ModPoly, ModPoly> ModPoly::divmod(const ModPoly& d) const
{
    if (d.is_zero()) throw internal_error("ModPoly division by zero");
    Int inv = invmod(d.c_.back(), p_);
    std::vector<Int> rem(c_);
    std::vector<Int> quo(c_.size() > d.c_.size() ? c_.size() - d.c_.size() + 1 : 1, Int(0));
    int dd = d.degree();
    for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
        Int q = mod_floor(rem[i] * inv, p_);
        if (sign(q) == 0) continue;
        quo[i - dd] = q;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] = mod_floor(rem[i - dd + j] - q * d.c_[j], p_);
    }
    return {ModPoly(p_, std::move(quo)), ModPoly(p_, std::move(rem))};
}

ModPoly ModPoly::derivative() const
{
    if (c_.size() <= 1) return ModPoly(p_, {});
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
    return ModPoly(p_, std::move(r));
}

Int ModPoly::eval(const Int& x) const
{
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = mod_floor(r * x + *it, p_);
    return r;
}

ModPoly ModPoly::gcd(ModPoly a, ModPoly b)
{
    while (!b.is_zero()) {
        ModPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ModPoly ModPoly::powmod(const ModPoly& base, const Int& e, const ModPoly& m)
{
    ModPoly result = ModPoly::constant(base.modulus(), 1);
    ModPoly b = base.mod(m);
    if (sign(e) < 0) throw internal_error("ModPoly::powmod negative exponent");
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        result = (result * result).mod(m);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            result = (result * b).mod(m);
    }
    return result;
}

IntPolynomial ModPoly::lift() const { return IntPolynomial(c_); }

std::string ModPoly::to_string() const { return lift().to_string(); }

// ---------------------------------------------------------------------------
// factorization

namespace {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ^ 0x8f1bbcdcbfa53e0bULL) {}
    uint64_t next()
    {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

ModPoly random_poly(const Int& p, int max_deg, Rng& rng)
{
    std::vector<Int> c(static_cast<size_t>(max_deg) + 1);
    for (auto& v : c) {
        Int r(rng.next());
        v = mod_floor(r * Int(rng.next()) + Int(rng.next()), p);
    }
    return ModPoly(p, std::move(c));
}

// squarefree decomposition in characteristic p; returns (g_i, m_i) with
// f = prod g_i^{m_i}, each g_i squarefree, g_i pairwise coprime
void squarefree_decompose(const ModPoly& f, unsigned mult,
                          std::vector<std::pair<ModPoly, unsigned>>& out)
{
    const Int& p = f.modulus();
    if (f.degree() <= 0) return;
    ModPoly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x^p); in F_p the coefficient Frobenius root is the identity
        if (!fits_ulong(p)) throw internal_error("perfect p-th power with huge p");
        unsigned long pl = mpz_get_ui(p.get_mpz_t());
        std::vector<Int> g;
        for (size_t i = 0; i <= static_cast<size_t>(f.degree()); i += pl)
            g.push_back(f.coeff(i));
        squarefree_decompose(ModPoly(p, std::move(g)), mult * static_cast<unsigned>(pl), out);
        return;
    }
    ModPoly w = ModPoly::gcd(f, d);
    ModPoly rest = f.divmod(w).first;  // product of squarefree part
    unsigned i = 1;
    while (rest.degree() > 0) {
        ModPoly next = ModPoly::gcd(rest, w);
        ModPoly factor = rest.divmod(next).first;  // part with multiplicity exactly i
        if (factor.degree() > 0) out.emplace_back(factor.monic(), mult * i);
        rest = next;
        w = w.divmod(next).first;
        ++i;
    }
    if (w.degree() > 0) squarefree_decompose(w, mult, out);
}

// equal-degree splitting of a squarefree product of irreducibles of degree d
void equal_degree_split(const ModPoly& f, int d, Rng& rng, std::vector<ModPoly>& out)
{
    const Int& p = f.modulus();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    ModPoly splitter = ModPoly::constant(p, 1);
    while (true) {
        ModPoly r = random_poly(p, f.degree() - 1, rng);
        if (r.degree() < 1) continue;
        ModPoly g = ModPoly::gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (p == 2) {
            // trace map r + r^2 + ... + r^(2^(d-1))
            ModPoly t = r, acc = r;
            for (int i = 1; i < d; ++i) {
                t = (t * t).mod(f);
                acc = acc + t;
            }
            g = ModPoly::gcd(acc, f);
        } else {
            Int e = (pow_ui(p, static_cast<unsigned long>(d)) - 1) / 2;
            ModPoly t = ModPoly::powmod(r, e, f) - ModPoly::constant(p, 1);
            g = ModPoly::gcd(t, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    equal_degree_split(splitter, d, rng, out);
    equal_degree_split(f.divmod(splitter).first, d, rng, out);
}

}  // namespace

std::vector<std::pair<ModPoly, unsigned>> factor_mod_p(const IntPolynomial& f, const Int& p,
                                                       uint64_t seed)
{
    if (!is_prime(p)) throw input_error("factor_mod_p: modulus is not prime");
    ModPoly fp = ModPoly::from_int_poly(f, p);
    if (fp.is_zero()) throw input_error("factor_mod_p: polynomial vanishes mod p");

    std::vector<std::pair<ModPoly, unsigned>> result;
    if (fp.degree() == 0) return result;

    Rng rng(seed ^ (static_cast<uint64_t>(mpz_fdiv_ui(p.get_mpz_t(), 0x7fffffff)) << 17));

    std::vector<std::pair<ModPoly, unsigned>> sqf;
    squarefree_decompose(fp.monic(), 1, sqf);

    for (const auto& [part, mult] : sqf) {
        // distinct-degree splitting
        ModPoly rest = part;
        ModPoly h = ModPoly::x(p);
        int d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (rest.degree() < 2 * d) {
                result.emplace_back(rest.monic(), mult);  // irreducible remainder
                break;
            }
            h = ModPoly::powmod(h, p, rest);
            ModPoly g = ModPoly::gcd(h - ModPoly::x(p), rest);
            if (g.degree() > 0) {
                std::vector<ModPoly> irr;
                equal_degree_split(g, d, rng, irr);
                for (auto& fac : irr) result.emplace_back(std::move(fac), mult);
                rest = rest.divmod(g).first;
                h = h.mod(rest.is_zero() ? g : rest);
            }
        }
    }

    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

bool splits_into_distinct_linear(const IntPolynomial& f, const Int& p)
{
    if (!is_prime(p)) throw input_error("splits_into_distinct_linear: p not prime");
    ModPoly fp = ModPoly::from_int_poly(f, p);
    if (fp.is_zero()) throw input_error("polynomial vanishes mod p");
    if (fp.degree() == 0) return false;
    // f | x^p - x  <=>  f splits into distinct linear factors
    ModPoly xp = ModPoly::powmod(ModPoly::x(p), p, fp);
    return xp == ModPoly::x(p).mod(fp);
}

std::vector<Int> roots_mod_p(const IntPolynomial& f, const Int& p, uint64_t seed)
{
    auto factors = factor_mod_p(f, p, seed);
    std::vector<Int> roots;
    for (const auto& [g, mult] : factors)
        if (g.degree() == 1) roots.push_back(mod_floor(Int(-g.coeff(0)), p));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

bool dedekind_p_maximal(const IntPolynomial& f, const Int& p)
{
    // factor f mod p = prod gbar_i^{e_i}; g = prod lifts(gbar_i),
    // h = lift of f/gbar, F = (g*h - f)/p; p-maximal iff gcd(F, gbar, hbar) = 1
    auto factors = factor_mod_p(f, p, 0);
    ModPoly gbar = ModPoly::constant(p, 1);
    for (const auto& [fac, e] : factors) gbar = gbar * fac;
    ModPoly fbar = ModPoly::from_int_poly(f, p).monic();
    auto [quo, rem] = fbar.divmod(gbar);
    if (!rem.is_zero()) throw internal_error("dedekind: radical does not divide f");
    ModPoly hbar = quo;
    IntPolynomial g = gbar.lift(), h = hbar.lift();
    IntPolynomial diff = g * h - f;
    std::vector<Int> fc(diff.coeffs());
    for (auto& v : fc) v = divexact(v, p);
    ModPoly F = ModPoly(p, std::move(fc));
    ModPoly d = ModPoly::gcd(ModPoly::gcd(F, gbar), hbar);
    return d.degree() == 0;
}

}  // namespace qmcert
