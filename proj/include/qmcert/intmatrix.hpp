#ifndef QMCERT_INTMATRIX_HPP
#define QMCERT_INTMATRIX_HPP

#include <optional>
#include <vector>

#include "qmcert/bigint.hpp"

namespace qmcert {

/// Dense rectangular matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

    static IntMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Int& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    std::vector<Int> column(size_t j) const;
    void set_column(size_t j, const std::vector<Int>& v);
    bool is_zero() const;

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    Int det_bareiss() const;

private:
    size_t rows_, cols_;
    std::vector<Int> e_;
};

/// Column-style Hermite normal form of the lattice spanned by the columns
/// of m.  The result has one column per pivot (rank columns), is upper
/// triangular with positive pivots on the diagonal of the pivot rows, and
/// every entry to the right of a pivot is reduced into [0, pivot).  A zero
/// matrix maps to itself.  For full column rank input the output is square.
IntMatrix hnf(const IntMatrix& m);

/// Solve H*x = v over the integers for H a full-rank square HNF matrix
/// (upper triangular, positive diagonal).  Returns nullopt when v is not in
/// the column lattice.
std::optional<std::vector<Int>> hnf_solve(const IntMatrix& h, const std::vector<Int>& v);

inline bool hnf_contains(const IntMatrix& h, const std::vector<Int>& v)
{
    return hnf_solve(h, v).has_value();
}

}  // namespace qmcert

#endif
