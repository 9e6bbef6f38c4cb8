#include "capkit/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace capkit {

namespace {

struct Tableau {
  int m = 0;                  // rows
  int n = 0;                  // structural + artificial columns
  RatMat t;                   // m x (n + 1), last column is the RHS
  RatVec obj;                 // reduced costs, length n
  Rat obj_rhs;                // objective value of the current basis
  std::vector<int> basis;     // basis[i] = column basic in row i

  void pivot(int row, int col) {
    Rat piv = t[row][col];
    for (int j = 0; j <= n; ++j) t[row][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rat f = t[i][col];
      for (int j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
    }
    if (obj[col] != 0) {
      Rat f = obj[col];
      for (int j = 0; j < n; ++j) obj[j] -= f * t[row][j];
      obj_rhs -= f * t[row][n];
    }
    basis[row] = col;
  }

  // Bland's rule: entering column is the lowest index with positive reduced
  // cost; leaving row breaks ratio ties by lowest basic column index.
  // Returns false when the entering column is unbounded.
  bool run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (obj[j] > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][n] / t[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult simplex_max(const RatMat& A, const RatVec& b, const RatVec& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("simplex: ragged matrix");
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("simplex: rhs size mismatch");

  // Phase one: maximize -sum(artificials) from the all-artificial basis.
  // Rows with negative rhs are negated first; `flip` remembers which, so the
  // Farkas certificate can be mapped back to the caller's row order.
  Tableau tab;
  tab.m = m;
  tab.n = n + m;
  tab.t.assign(m, RatVec(tab.n + 1, Rat(0)));
  tab.basis.resize(m);
  std::vector<bool> flip(m, false);
  for (int i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    flip[i] = neg;
    for (int j = 0; j < n; ++j) tab.t[i][j] = neg ? -A[i][j] : A[i][j];
    tab.t[i][n + i] = 1;
    tab.t[i][tab.n] = neg ? -b[i] : b[i];
    tab.basis[i] = n + i;
  }
  // Objective-row corner holds -z throughout (uniform row elimination).
  tab.obj.assign(tab.n, Rat(0));
  tab.obj_rhs = 0;
  // Reduced costs for cost vector (0,...,0,-1,...,-1) under the artificial
  // basis: r_j = sum_i T_ij for structural j, 0 for artificials; -z = sum b.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) tab.obj[j] += tab.t[i][j];
  for (int i = 0; i < m; ++i) tab.obj_rhs += tab.t[i][tab.n];

  bool ok = tab.run();
  assert(ok);  // phase one is bounded above by zero
  (void)ok;

  LpResult res;
  if (tab.obj_rhs > 0) {
    // Infeasible.  Dual values: y_i = -1 - r(artificial_i); the certificate
    // for the original orientation is -y with flipped rows re-negated.
    res.status = LpStatus::Infeasible;
    res.farkas.assign(m, Rat(0));
    for (int i = 0; i < m; ++i) {
      Rat y = Rat(-1) - tab.obj[n + i];
      Rat v = -y;
      res.farkas[i] = flip[i] ? -v : v;
    }
#ifndef NDEBUG
    Rat dot_b = 0;
    for (int i = 0; i < m; ++i) dot_b += res.farkas[i] * b[i];
    assert(dot_b > 0);
    for (int j = 0; j < n; ++j) {
      Rat dot_a = 0;
      for (int i = 0; i < m; ++i) dot_a += res.farkas[i] * A[i][j];
      assert(dot_a <= 0);
    }
#endif
    return res;
  }

  // Drive remaining artificials out of the basis; a row with no structural
  // pivot available is a redundant constraint and is dropped.
  for (int i = 0; i < tab.m;) {
    if (tab.basis[i] < n) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (tab.t[i][j] != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
      --tab.m;
    }
  }
  const int m2 = tab.m;

  // Phase two on structural columns only.
  Tableau p2;
  p2.m = m2;
  p2.n = n;
  p2.t.assign(m2, RatVec(n + 1, Rat(0)));
  p2.basis = tab.basis;
  for (int i = 0; i < m2; ++i) {
    for (int j = 0; j < n; ++j) p2.t[i][j] = tab.t[i][j];
    p2.t[i][n] = tab.t[i][tab.n];
  }
  p2.obj = c;
  p2.obj_rhs = 0;
  for (int i = 0; i < m2; ++i) {
    Rat cb = c[p2.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < n; ++j) p2.obj[j] -= cb * p2.t[i][j];
    p2.obj_rhs -= cb * p2.t[i][n];
  }

  if (!p2.run()) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x.assign(n, Rat(0));
  for (int i = 0; i < m2; ++i) res.x[p2.basis[i]] = p2.t[i][n];
  res.objective = -p2.obj_rhs;
  return res;
}

}  // namespace capkit
