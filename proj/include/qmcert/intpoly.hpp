#ifndef QMCERT_INTPOLY_HPP
#define QMCERT_INTPOLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "qmcert/bigint.hpp"

namespace qmcert {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first.  The zero polynomial has an empty
/// coefficient vector and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial x_power(unsigned k);  // x^k
    static IntPolynomial constant(const Int& c);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Int& coeff(size_t i) const;  // 0 beyond degree
    const Int& leading() const;
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial scaled(const Int& s) const;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    IntPolynomial derivative() const;

    Int content() const;                 // gcd of coefficients (0 for zero poly)
    IntPolynomial primitive_part() const;

    bool is_squarefree() const;          // via gcd(f, f')
    Int discriminant() const;            // (-1)^{n(n-1)/2} Res(f,f') / lc(f)

    std::string to_string(const std::string& var = "x") const;

    /// Resultant Res(f, g) by fraction-free subresultant elimination.
    /// Throws input_error on zero input.
    static Int resultant(const IntPolynomial& f, const IntPolynomial& g);

    /// gcd over Z, primitive remainder sequence; result has positive leading
    /// coefficient and content gcd(cont f, cont g).
    static IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g);

private:
    void normalize();
    std::vector<Int> c_;
};

/// Number of distinct real roots of a squarefree polynomial, by Sturm
/// sequences in exact rational arithmetic.  Throws input_error if f is not
/// squarefree or is zero.
int count_real_roots(const IntPolynomial& f);

}  // namespace qmcert

#endif
