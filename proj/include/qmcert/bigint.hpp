#ifndef QMCERT_BIGINT_HPP
#define QMCERT_BIGINT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qmcert {

// All integer arithmetic in this project is arbitrary precision (GMP).
// Norm values in the bound-set enumeration reach hundreds of digits, so
// there is no fixed-width fast path anywhere.
using Int = mpz_class;
using Rat = mpq_class;

// Bad user input (files, CLI arguments, out-of-domain parameters).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A violated internal invariant; maps to exit code 2 in the CLI.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline int sign(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sign(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int abs(const Int& a)
{
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// floor(sqrt(a)), a >= 0
inline Int isqrt(const Int& a)
{
    if (sign(a) < 0) throw internal_error("isqrt of negative value");
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& a)
{
    return sign(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int pow_ui(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// a mod m reduced into [0, m), m > 0
inline Int mod_floor(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int divexact(const Int& a, const Int& b)
{
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (sign(r) != 0) throw internal_error("divexact: not divisible");
    return q;
}

inline bool divisible(const Int& a, const Int& b)
{
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

inline Int powmod(const Int& b, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// inverse of a mod m; throws if not invertible
inline Int invmod(const Int& a, const Int& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw internal_error("invmod: not invertible");
    return r;
}

inline bool fits_ulong(const Int& a) { return mpz_fits_ulong_p(a.get_mpz_t()) != 0; }
inline bool fits_slong(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

inline Int int_from_string(const std::string& s)
{
    Int r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw input_error("not a decimal integer: '" + s + "'");
    return r;
}

}  // namespace qmcert

#endif
