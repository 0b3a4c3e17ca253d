#ifndef QMCERT_PRIMES_HPP
#define QMCERT_PRIMES_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "qmcert/bigint.hpp"

namespace qmcert {

/// Jacobi symbol (a | n) for odd positive n, by quadratic reciprocity.
/// Throws input_error when n is even or nonpositive.
int jacobi_symbol(const Int& a, const Int& n);

struct PrimalityResult {
    bool prime;
    bool proven;  // false only for probable primes above the 64-bit range
};

/// Deterministic Miller-Rabin for |n| < 2^64 (fixed witness set), strong
/// probable-prime testing with 40 deterministic pseudo-random rounds beyond.
/// n < 2 is composite by convention.
PrimalityResult classify_prime(const Int& n);
bool is_prime(const Int& n);

/// Smallest prime strictly greater than n.
Int next_prime(const Int& n);

/// Primes p <= limit, ascending (backed by a shared grow-only sieve).
std::vector<uint64_t> primes_up_to(uint64_t limit);

struct FactorOptions {
    uint64_t trial_bound = 1'000'000;
    uint64_t rho_iterations = 1'000'000;  // per composite cofactor
    uint64_t seed = 0;
};

struct Factorization {
    std::map<Int, unsigned> factors;  // certified prime -> exponent
    std::vector<Int> probable_primes;  // subset of keys that are only probable
    Int cofactor = 1;                 // composite remainder when incomplete
    bool complete = true;
};

/// Factor |n| (n != 0): block-gcd trial division up to trial_bound, then
/// Brent's rho within the iteration budget.  Factors that cannot be certified
/// prime in the 64-bit deterministic range are reported as probable; an
/// unsplit composite remainder is returned in cofactor with complete=false.
/// Deterministic for fixed options.
Factorization factorize(const Int& n, const FactorOptions& opts = {});

/// Convenience: the distinct certified prime divisors; throws input_error if
/// the factorization is incomplete.
std::vector<Int> prime_divisors(const Int& n, const FactorOptions& opts = {});

bool is_squarefree(const Int& n, const FactorOptions& opts = {});

}  // namespace qmcert

#endif
