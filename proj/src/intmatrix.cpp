#include "qmcert/intmatrix.hpp"

#include <algorithm>

namespace qmcert {

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Int> IntMatrix::column(size_t j) const
{
    std::vector<Int> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void IntMatrix::set_column(size_t j, const std::vector<Int>& v)
{
    for (size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

bool IntMatrix::is_zero() const
{
    return std::all_of(e_.begin(), e_.end(), [](const Int& v) { return sign(v) == 0; });
}

Int IntMatrix::det_bareiss() const
{
    if (rows_ != cols_) throw internal_error("det of non-square matrix");
    size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (sign(a.at(k, k)) == 0) {
            size_t piv = k + 1;
            while (piv < n && sign(a.at(piv, k)) == 0) ++piv;
            if (piv == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a.at(i, j) = divexact(a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j), prev);
        prev = a.at(k, k);
    }
    Int d = a.at(n - 1, n - 1);
    return sgn < 0 ? Int(-d) : d;
}

IntMatrix hnf(const IntMatrix& m)
{
    size_t n = m.rows();
    if (m.is_zero()) return m;

    std::vector<std::vector<Int>> cols;
    for (size_t j = 0; j < m.cols(); ++j) {
        auto c = m.column(j);
        if (std::any_of(c.begin(), c.end(), [](const Int& v) { return sign(v) != 0; }))
            cols.push_back(std::move(c));
    }

    // Eliminate bottom-up: after processing row i every remaining column has
    // zeros at rows >= i, and the single column left with a nonzero entry at
    // row i (if any) is extracted as the pivot column whose lowest nonzero
    // entry sits at row i.
    std::vector<std::pair<size_t, std::vector<Int>>> pivots;  // (pivot row, column)
    for (size_t ii = n; ii-- > 0;) {
        size_t i = ii;
        while (true) {
            std::vector<size_t> nz;
            for (size_t k = 0; k < cols.size(); ++k)
                if (sign(cols[k][i]) != 0) nz.push_back(k);
            if (nz.size() <= 1) break;
            // reduce all entries by the column with the smallest |entry|
            size_t best = nz[0];
            for (size_t k : nz)
                if (abs(cols[k][i]) < abs(cols[best][i])) best = k;
            for (size_t k : nz) {
                if (k == best) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), cols[k][i].get_mpz_t(), cols[best][i].get_mpz_t());
                for (size_t r = 0; r < n; ++r) cols[k][r] -= q * cols[best][r];
            }
            cols.erase(std::remove_if(cols.begin(), cols.end(),
                                      [](const std::vector<Int>& c) {
                                          return std::all_of(c.begin(), c.end(), [](const Int& v) {
                                              return sign(v) == 0;
                                          });
                                      }),
                       cols.end());
        }
        for (size_t k = 0; k < cols.size(); ++k) {
            if (sign(cols[k][i]) != 0) {
                auto piv = cols[k];
                if (sign(piv[i]) < 0)
                    for (auto& v : piv) v = -v;
                pivots.emplace_back(i, std::move(piv));
                cols.erase(cols.begin() + static_cast<long>(k));
                break;
            }
        }
    }

    std::reverse(pivots.begin(), pivots.end());  // pivot rows increasing
    size_t r = pivots.size();
    // reduce entries to the right of each pivot into [0, pivot)
    for (size_t k = 1; k < r; ++k) {
        for (size_t jj = k; jj-- > 0;) {
            size_t i = pivots[jj].first;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), pivots[k].second[i].get_mpz_t(),
                       pivots[jj].second[i].get_mpz_t());
            if (sign(q) != 0)
                for (size_t t = 0; t < n; ++t) pivots[k].second[t] -= q * pivots[jj].second[t];
        }
    }

    IntMatrix out(n, r);
    for (size_t j = 0; j < r; ++j) out.set_column(j, pivots[j].second);
    return out;
}

std::optional<std::vector<Int>> hnf_solve(const IntMatrix& h, const std::vector<Int>& v)
{
    size_t n = h.rows();
    if (h.cols() != n || v.size() != n) throw internal_error("hnf_solve: shape mismatch");
    std::vector<Int> x(n), rem(v);
    for (size_t ii = n; ii-- > 0;) {
        const Int& piv = h.at(ii, ii);
        if (sign(piv) == 0) throw internal_error("hnf_solve: singular matrix");
        if (!divisible(rem[ii], piv)) return std::nullopt;
        x[ii] = divexact(rem[ii], piv);
        for (size_t r = 0; r <= ii; ++r) rem[r] -= x[ii] * h.at(r, ii);
    }
    return x;
}

}  // namespace qmcert
