#ifndef QMCERT_MODPOLY_HPP
#define QMCERT_MODPOLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qmcert/bigint.hpp"
#include "qmcert/intpoly.hpp"

namespace qmcert {

/// Polynomial over the p-element field, coefficients reduced into [0, p),
/// lowest degree first.
class ModPoly {
public:
    ModPoly(Int p, std::vector<Int> coeffs);
    static ModPoly from_int_poly(const IntPolynomial& f, const Int& p);
    static ModPoly x(const Int& p);
    static ModPoly constant(const Int& p, const Int& c);

    const Int& modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Int& coeff(size_t i) const;
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const ModPoly& o) const { return c_ == o.c_; }
    bool operator<(const ModPoly& o) const;  // degree, then lex on coefficients

    ModPoly operator+(const ModPoly& o) const;
    ModPoly operator-(const ModPoly& o) const;
    ModPoly operator*(const ModPoly& o) const;
    ModPoly monic() const;
    std::pair<ModPoly, ModPoly> divmod(const ModPoly& d) const;
    ModPoly mod(const ModPoly& d) const { return divmod(d).second; }
    ModPoly derivative() const;
    Int eval(const Int& x) const;

    static ModPoly gcd(ModPoly a, ModPoly b);  // monic gcd
    /// base^e mod m
    static ModPoly powmod(const ModPoly& base, const Int& e, const ModPoly& m);

    IntPolynomial lift() const;  // coefficients as integers in [0, p)
    std::string to_string() const;

private:
    void normalize();
    Int p_;
    std::vector<Int> c_;
};

/// Full factorization of f mod p into monic irreducible factors with
/// multiplicities (squarefree decomposition, distinct-degree splitting, then
/// Cantor-Zassenhaus equal-degree splitting).  The factor discovery order is
/// randomized from `seed`; the returned list is sorted by degree then
/// lexicographically by coefficient sequence, so the output is canonical.
/// Throws input_error when p is not prime or f vanishes mod p.
std::vector<std::pair<ModPoly, unsigned>> factor_mod_p(const IntPolynomial& f, const Int& p,
                                                       uint64_t seed = 0);

/// True when f mod p splits into deg(f) distinct linear factors, decided by
/// x^p == x in F_p[x]/(f).  Requires p prime and f nonzero mod p.
bool splits_into_distinct_linear(const IntPolynomial& f, const Int& p);

/// Roots of f mod p, sorted ascending.
std::vector<Int> roots_mod_p(const IntPolynomial& f, const Int& p, uint64_t seed = 0);

/// Dedekind index criterion: true when p does not divide [O_K : Z[theta]]
/// for theta a root of the monic irreducible f.
bool dedekind_p_maximal(const IntPolynomial& f, const Int& p);

}  // namespace qmcert

#endif
