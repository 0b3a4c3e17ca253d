#ifndef QMCERT_BOUNDSETS_HPP
#define QMCERT_BOUNDSETS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmcert/numberfield.hpp"
#include "qmcert/quaternion.hpp"

namespace qmcert {

/// Weil number beta with beta^2 + a*beta + q = 0, |a| <= 2 sqrt(q).
struct FrobeniusRoot {
    Int a;
    Int q;
};

/// All roots for the prime q, sorted by trace coefficient a ascending.
std::vector<FrobeniusRoot> frobenius_roots(const Int& q);

/// t_m = beta^m + conj(beta)^m via t_0 = 2, t_1 = -a,
/// t_{k+1} = -a t_k - q t_{k-1}; symmetric in the two roots by construction.
Int beta_power_trace(const FrobeniusRoot& root, unsigned long m);

enum class Variant { Primed, Unprimed };

/// Exponent values for the group-ring elements: {0,4,6,8,12} in the primed
/// family, {0,8,12,16,24} in the unprimed one.
const std::vector<unsigned>& exponent_values(Variant v);

/// Power exponent applied to the Weil number: 12 h (primed), 24 h (unprimed).
unsigned long weil_power(Variant v, const Int& h);

/// Exponent vector indexed by the verified automorphisms of K.
struct ExponentVector {
    std::vector<unsigned> a;
};

/// prod_sigma sigma(alpha)^{a_sigma}, exact.
FieldElement alpha_power(const NumberField& K, const FieldElement& alpha,
                         const ExponentVector& eps);

/// Norm_{K/Q}(A^2 - t_m A + q^m) for A = alpha^eps: the norm from K of the
/// degree-2 relative norm of (A - beta^m).  When beta lies outside K this is
/// exactly the norm of A - beta^m from K(beta); when beta lies in K it is
/// the product of the norms over the two conjugate roots (a sound superset
/// for prime extraction).
Int norm_value(const NumberField& K, const FieldElement& alpha, const ExponentVector& eps,
               const FrobeniusRoot& root, unsigned long m);

/// The same quadratic value for a precomputed A.
Int norm_value_for(const NumberField& K, const FieldElement& A, const FrobeniusRoot& root,
                   unsigned long m);

/// Zero-product fallback: when the quadratic value vanishes and beta lies in
/// K (witnessed square root of the squarefree part of a^2-4q), evaluate the
/// two factors A - beta^m separately and return the norms of the nonzero
/// ones.  Empty result means every factor vanished.
std::vector<Int> norm_value_split_factors(const NumberField& K, const FieldElement& A,
                                          const FrobeniusRoot& root, unsigned long m);

struct EnumerationOptions {
    Int tuple_budget = Int(10'000'000);
    unsigned threads = 1;
    uint64_t seed = 0;
    uint64_t trial_bound = 1'000'000;
    uint64_t rho_iterations = 200'000;
    /// restrict the support of the exponent vectors to these automorphism
    /// indices (the rest forced to 0); makes high-degree fields explorable
    /// but the resulting sets are PARTIAL, not the full exceptional sets
    std::optional<std::vector<unsigned>> eps_support;
};

struct PrimeWitness {
    Int q;                     // residue characteristic of the class prime
    std::vector<unsigned> eps; // exponent tuple
    Int a;                     // Frobenius trace coefficient
};

struct ExceptionalSets {
    Variant variant;
    std::vector<Int> N0, T, Ram, N1;  // sorted; N1 = N0 | T | Ram
    std::map<Int, PrimeWitness> n0_witnesses;
    std::vector<Int> probable_primes;    // N0 members only probable, not proven prime
    std::vector<Int> incomplete_values;  // norm values with unfactored cofactor
    bool factorization_complete = true;
    bool restricted_support = false;     // enumeration was user-restricted
    unsigned long zero_values = 0;       // tuples excluded by the \ {0} rule
    unsigned long tuples_enumerated = 0;
};

struct EnumerationOutcome {
    bool feasible = false;
    Int tuple_count;             // |values|^|support| (the budget gate quantity)
    std::string tuple_count_expr;  // e.g. "5^16"
    std::string infeasible_reason;
    std::optional<ExceptionalSets> sets;
};

/// Enumerate (frak-q, eps, beta) over the variant family, collect the prime
/// divisors of the nonzero norm values into N0, and assemble
/// N1 = N0 | T | Ram with T = {residue characteristics of S} | {2,3}.
/// Deterministic for fixed options, independent of the thread count.
EnumerationOutcome build_exceptional_sets(const NumberField& K, Variant variant,
                                          const EnumerationOptions& opts = {});

struct IrreducibilityBound {
    Int q;
    Int four_q;
    Int max_prime_of_d;
    Int max_N1;        // 0 when N1 is empty
    Int constant;      // C(B,K) = max of the three components
    bool complete;     // false when the exceptional set may miss primes
    std::string predicate;
    Int d;
    std::vector<Int> excluded;  // the N'1 set backing the predicate

    /// P(p): p > 4q, p does not divide d, p not in N'1.  True for every
    /// prime p > C(B,K).
    bool admits(const Int& p) const;
};

/// The effective constant C(B,K) = max(4q, max prime | d, max N'_1) together
/// with the predicate "p > 4q, p does not divide d, p not in N'_1" under
/// which the mod-p representation attached to any QM-surface is irreducible.
IrreducibilityBound assemble_irreducibility_bound(const NumberField& K,
                                                  const QuaternionAlgebra& B,
                                                  const ExceptionalSets& primed, const Int& q);

struct Gamma0Report {
    Int q;
    std::string predicate;  // p > 4q, p >= 11, p != 13, p !| d, p not in N1 | N'1
    std::vector<Int> excluded_union;  // sorted N1 | N'1
    bool b_splits_over_K;
    std::string conclusion;  // keyed on splits_over_K
    bool complete;
    Int d;

    /// Q(p): p > 4q, p >= 11, p != 13, p does not divide d, p outside the
    /// union of the two exceptional sets.  Q(13) is false always.
    bool admits(const Int& p) const;
};

Gamma0Report assemble_gamma0_report(const NumberField& K, const QuaternionAlgebra& B,
                                    const ExceptionalSets& primed,
                                    const ExceptionalSets& unprimed, const Int& q);

}  // namespace qmcert

#endif
