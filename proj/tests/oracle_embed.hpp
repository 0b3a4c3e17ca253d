#ifndef QMCERT_TEST_ORACLE_EMBED_HPP
#define QMCERT_TEST_ORACLE_EMBED_HPP

#include <vector>

#include "qmcert/numberfield.hpp"

namespace qmcert::testing {

/// High-precision floating oracle for norm values, fully independent of the
/// exact integer path: the complex roots of the defining polynomial are
/// found by Durand-Kerner iteration in MPFR arithmetic, the element
/// A = alpha^eps is evaluated per embedding, and the product of the
/// quadratic values (A_j - beta^m)(A_j - conj(beta)^m) over all embeddings
/// is rounded to the nearest integer.
class EmbeddingOracle {
public:
    explicit EmbeddingOracle(const NumberField& K, unsigned precision_bits = 4096);
    ~EmbeddingOracle();
    EmbeddingOracle(const EmbeddingOracle&) = delete;
    EmbeddingOracle& operator=(const EmbeddingOracle&) = delete;

    /// |float product - rounded integer| and the rounded integer itself.
    struct Result {
        Int rounded;
        double error;  // distance from the float value to the rounded integer
    };
    /// Norm of the quadratic value for exponent vector eps applied to alpha
    /// (as in the exceptional-set enumeration) at the root (a, q), power m.
    Result norm_value(const FieldElement& alpha, const std::vector<unsigned>& eps, const Int& a,
                      const Int& q, unsigned long m) const;

    /// Plain field norm of an element, for cross checks.
    Result element_norm(const FieldElement& x) const;

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace qmcert::testing

#endif
