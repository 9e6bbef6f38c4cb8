#pragma once

#include <stdexcept>
#include <vector>

#include "capkit/sparse_poly.hpp"

namespace capkit {

// Dense matrix with entrywise nonnegative entries, row major.
template <class C>
struct NonnegMatrix {
  int rows = 0, cols = 0;
  std::vector<C> data;

  NonnegMatrix() = default;
  NonnegMatrix(int r, int c) : rows(r), cols(c), data(r * c, C(0)) {
    if (r < 0 || c < 0) throw std::invalid_argument("negative dimension");
  }
  static NonnegMatrix from_rows(const std::vector<std::vector<C>>& rows_in) {
    int r = static_cast<int>(rows_in.size());
    int c = r == 0 ? 0 : static_cast<int>(rows_in[0].size());
    NonnegMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows_in[i].size()) != c)
        throw std::invalid_argument("ragged matrix");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
  }
  static NonnegMatrix constant(int r, int c, const C& v) {
    NonnegMatrix m(r, c);
    for (auto& x : m.data) x = v;
    return m;
  }

  C& at(int i, int j) { return data[i * cols + j]; }
  const C& at(int i, int j) const { return data[i * cols + j]; }

  C row_sum(int i) const {
    C s(0);
    for (int j = 0; j < cols; ++j) s += at(i, j);
    return s;
  }
  C col_sum(int j) const {
    C s(0);
    for (int i = 0; i < rows; ++i) s += at(i, j);
    return s;
  }

  void check_nonneg() const {
    for (const C& v : data)
      if (v < C(0)) throw std::invalid_argument("negative matrix entry");
  }
};

using MatQ = NonnegMatrix<Rat>;
using MatD = NonnegMatrix<double>;

inline MatD to_float(const MatQ& m) {
  MatD r(m.rows, m.cols);
  for (size_t i = 0; i < m.data.size(); ++i) r.data[i] = rat_to_double(m.data[i]);
  return r;
}

// prod_i sum_j M_ij x_j; a zero row makes the product identically zero,
// which downstream capacity queries reject, so it is an input error here.
template <class C>
SparsePoly<C> product_polynomial(const NonnegMatrix<C>& m) {
  m.check_nonneg();
  SparsePoly<C> p = SparsePoly<C>::constant(m.cols, C(1));
  for (int i = 0; i < m.rows; ++i) {
    SparsePoly<C> row(m.cols);
    for (int j = 0; j < m.cols; ++j) {
      if (m.at(i, j) == C(0)) continue;
      ExponentVec mu(m.cols, 0);
      mu[j] = 1;
      row.add_term(std::move(mu), m.at(i, j));
    }
    if (row.is_zero())
      throw std::invalid_argument("product_polynomial: zero row " +
                                  std::to_string(i));
    p = p * row;
  }
  return p;
}

// Ryser's formula with Gray-code subset updates, O(2^n n).
template <class C>
C permanent(const NonnegMatrix<C>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("permanent: square input required");
  const int n = m.rows;
  if (n > 20) throw std::invalid_argument("permanent: n > 20");
  if (n == 0) return C(1);

  std::vector<C> sums(n, C(0));
  C total(0);
  std::uint32_t prev = 0;
  for (std::uint32_t g = 1; g < (1u << n); ++g) {
    std::uint32_t gray = g ^ (g >> 1);
    std::uint32_t diff = gray ^ prev;
    int j = 0;
    while (!((diff >> j) & 1)) ++j;
    bool added = gray & diff;
    for (int i = 0; i < n; ++i) {
      if (added)
        sums[i] += m.at(i, j);
      else
        sums[i] -= m.at(i, j);
    }
    prev = gray;
    C prod(1);
    for (int i = 0; i < n; ++i) prod *= sums[i];
    int bits = __builtin_popcount(gray);
    if ((n - bits) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

// Alternating row/column normalization toward a doubly stochastic matrix.
// Requires a square matrix with strictly positive row and column sums at
// every step (positive input suffices).
MatD sinkhorn(const MatD& m, int max_iter = 1000, double tol = 1e-12);

}  // namespace capkit
