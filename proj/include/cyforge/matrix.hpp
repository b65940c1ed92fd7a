#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/numeric.hpp"

namespace cyforge {

// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged rows");
      for (long v : r) e_.emplace_back(v);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix without_row(std::size_t r) const {
    IntMatrix m(rows_ - 1, cols_);
    for (std::size_t i = 0, k = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < cols_; ++j) m.at(k, j) = at(i, j);
      ++k;
    }
    return m;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

// Rank over Q by fraction-free (Bareiss) elimination.
// Deterministic pivoting: first nonzero entry in column order.
inline int rank_exact(IntMatrix m) {
  if (m.empty()) return 0;
  const std::size_t nr = m.rows(), nc = m.cols();
  std::size_t r = 0;
  Int prev(1);
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && m.at(p, c) == 0) ++p;
    if (p == nr) continue;
    if (p != r)
      for (std::size_t j = 0; j < nc; ++j) std::swap(m.at(p, j), m.at(r, j));
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j)
        m.at(i, j) = exact_div(m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j),
                               prev);
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    ++r;
  }
  return static_cast<int>(r);
}

namespace detail {

inline void smith_row_reduce(IntMatrix& a, std::size_t r0, std::size_t c0) {
  const std::size_t nr = a.rows(), nc = a.cols();
  for (bool again = true; again;) {
    again = false;
    // clear column below pivot
    for (std::size_t i = r0 + 1; i < nr; ++i) {
      while (a.at(i, c0) != 0) {
        if (a.at(r0, c0) == 0 ||
            (abs(a.at(i, c0)) < abs(a.at(r0, c0))))
          for (std::size_t j = 0; j < nc; ++j) std::swap(a.at(r0, j), a.at(i, j));
        if (a.at(i, c0) == 0) break;
        Int q = a.at(i, c0) / a.at(r0, c0);
        for (std::size_t j = c0; j < nc; ++j) a.at(i, j) -= q * a.at(r0, j);
      }
    }
    // clear row right of pivot
    for (std::size_t j = c0 + 1; j < nc; ++j) {
      while (a.at(r0, j) != 0) {
        if (a.at(r0, c0) == 0 ||
            (abs(a.at(r0, j)) < abs(a.at(r0, c0))))
          for (std::size_t i = r0; i < nr; ++i) std::swap(a.at(i, c0), a.at(i, j));
        if (a.at(r0, j) == 0) break;
        Int q = a.at(r0, j) / a.at(r0, c0);
        for (std::size_t i = r0; i < nr; ++i) a.at(i, j) -= q * a.at(i, c0);
      }
    }
    // column swaps above may reintroduce entries below the pivot
    for (std::size_t i = r0 + 1; i < nr; ++i)
      if (a.at(i, c0) != 0) again = true;
  }
}

}  // namespace detail

// Diagonal of the Smith normal form: nonnegative, each entry divides the next.
inline std::vector<Int> smith_diagonal(IntMatrix a) {
  const std::size_t k = a.empty() ? 0 : std::min(a.rows(), a.cols());
  std::vector<Int> diag;
  std::size_t r0 = 0;
  while (r0 < std::min(a.rows(), a.cols())) {
    // find a nonzero pivot
    std::size_t pi = a.rows(), pj = 0;
    for (std::size_t i = r0; i < a.rows() && pi == a.rows(); ++i)
      for (std::size_t j = r0; j < a.cols(); ++j)
        if (a.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == a.rows()) break;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r0, j), a.at(pi, j));
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, r0), a.at(i, pj));
    detail::smith_row_reduce(a, r0, r0);
    // pivot must divide every remaining entry; if not, absorb and redo
    Int p = abs(a.at(r0, r0));
    bool ok = true;
    for (std::size_t i = r0 + 1; i < a.rows() && ok; ++i)
      for (std::size_t j = r0 + 1; j < a.cols() && ok; ++j)
        if (!divides(p, a.at(i, j))) {
          for (std::size_t jj = 0; jj < a.cols(); ++jj)
            a.at(r0, jj) += a.at(i, jj);
          ok = false;
        }
    if (!ok) continue;
    diag.push_back(p);
    ++r0;
  }
  while (diag.size() < k) diag.emplace_back(0);
  return diag;
}

struct SolveResult {
  bool consistent = false;
  bool unique = false;  // meaningful only when consistent
  std::vector<Rat> x;   // free variables set to zero
};

// Exact solve of a*x = b over Q with deterministic pivoting.
inline SolveResult solve_rational(std::vector<std::vector<Rat>> a,
                                  std::vector<Rat> b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("solve_rational: size mismatch");
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<std::size_t> piv_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rat pv = a[r][c];
    for (std::size_t j = c; j < n; ++j) a[r][j] /= pv;
    b[r] /= pv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    piv_cols.push_back(c);
    ++r;
  }
  SolveResult res;
  for (std::size_t i = r; i < m; ++i)
    if (b[i] != 0) return res;  // inconsistent
  res.consistent = true;
  res.unique = piv_cols.size() == n;
  res.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < piv_cols.size(); ++i) res.x[piv_cols[i]] = b[i];
  return res;
}

inline SolveResult solve_rational(const IntMatrix& a, const std::vector<Rat>& b) {
  std::vector<std::vector<Rat>> aq(a.rows(), std::vector<Rat>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) aq[i][j] = Rat(a.at(i, j));
  return solve_rational(std::move(aq), b);
}

}  // namespace cyforge
