#include "capkit/newton_polytope.hpp"

#include <set>
#include <stdexcept>

namespace capkit {

namespace {

// Equality system for convex weights: one row per coordinate plus the
// weight-sum row.  Columns are the support points; `with_slack` appends a
// column for the uniform slack t (substituting c_mu = d_mu + t).
void build_system(const std::vector<ExponentVec>& support, const RatVec& alpha,
                  bool with_slack, RatMat& A, RatVec& b) {
  const int n = static_cast<int>(alpha.size());
  const int s = static_cast<int>(support.size());
  A.assign(n + 1, RatVec(s + (with_slack ? 1 : 0), Rat(0)));
  b.assign(n + 1, Rat(0));
  for (int j = 0; j < s; ++j) {
    for (int k = 0; k < n; ++k) A[k][j] = support[j][k];
    A[n][j] = 1;
  }
  if (with_slack) {
    for (int k = 0; k < n; ++k) {
      Rat sum = 0;
      for (int j = 0; j < s; ++j) sum += support[j][k];
      A[k][s] = sum;
    }
    A[n][s] = s;
  }
  for (int k = 0; k < n; ++k) b[k] = alpha[k];
  b[n] = 1;
}

}  // namespace

MembershipResult newton_membership(const std::vector<ExponentVec>& support,
                                   const RatVec& alpha) {
  if (support.empty())
    throw std::invalid_argument("newton_membership: empty support");
  const int n = static_cast<int>(alpha.size());
  const int s = static_cast<int>(support.size());
  for (const auto& mu : support)
    if (static_cast<int>(mu.size()) != n)
      throw std::invalid_argument("newton_membership: arity mismatch");

  MembershipResult res;

  // One LP answers both questions: feasibility of convex weights, and the
  // best uniform lower bound t on them.  t* > 0 iff alpha lies in the
  // relative interior of the hull.
  RatMat A;
  RatVec b;
  build_system(support, alpha, /*with_slack=*/true, A, b);
  RatVec c(s + 1, Rat(0));
  c[s] = 1;
  LpResult lp = simplex_max(A, b, c);

  if (lp.status == LpStatus::Infeasible) {
    res.region = Region::Outside;
    // Farkas components: (y_1..y_n, y_0) with y.mu + y_0 <= 0 < y.alpha + y_0.
    res.separator.assign(lp.farkas.begin(), lp.farkas.begin() + n);
    Rat margin;
    bool first = true;
    for (const auto& mu : support) {
      Rat d = 0;
      for (int k = 0; k < n; ++k) d += res.separator[k] * (alpha[k] - Rat(mu[k]));
      if (first || d < margin) {
        margin = d;
        first = false;
      }
    }
    if (margin <= 0)
      throw std::logic_error("newton_membership: invalid separator");
    res.margin = margin;
    return res;
  }
  if (lp.status != LpStatus::Optimal)
    throw std::logic_error("newton_membership: slack LP unbounded");

  if (lp.objective > 0) {
    res.region = Region::Interior;
    return res;
  }

  // Boundary: grow the set of support points usable with positive weight.
  // Fixed point = support of the minimal face containing alpha.
  res.region = Region::Boundary;
  build_system(support, alpha, /*with_slack=*/false, A, b);
  std::set<int> known;
  for (int j = 0; j < s; ++j)
    if (lp.x[j] > 0) known.insert(j);
  while (static_cast<int>(known.size()) < s) {
    RatVec obj(s, Rat(0));
    for (int j = 0; j < s; ++j)
      if (!known.count(j)) obj[j] = 1;
    LpResult step = simplex_max(A, b, obj);
    if (step.status != LpStatus::Optimal)
      throw std::logic_error("newton_membership: face LP failed");
    if (step.objective == 0) break;
    size_t before = known.size();
    for (int j = 0; j < s; ++j)
      if (step.x[j] > 0) known.insert(j);
    if (known.size() == before)
      throw std::logic_error("newton_membership: face loop stalled");
  }
  for (int j : known) res.face.push_back(support[j]);
  return res;
}

RatVec affine_hull_project(const std::vector<ExponentVec>& support,
                           const RatVec& alpha) {
  if (support.empty())
    throw std::invalid_argument("affine_hull_project: empty support");
  const int n = static_cast<int>(alpha.size());
  for (const auto& mu : support)
    if (static_cast<int>(mu.size()) != n)
      throw std::invalid_argument("affine_hull_project: arity mismatch");

  // Row-reduce the differences mu_i - mu_0 into a basis of the direction
  // space.  A full-dimensional hull means nothing to project.
  std::vector<RatVec> basis;
  std::vector<int> pivot;
  for (size_t i = 1; i < support.size(); ++i) {
    RatVec row(n);
    for (int k = 0; k < n; ++k)
      row[k] = Rat(support[i][k] - support[0][k]);
    for (size_t b = 0; b < basis.size(); ++b) {
      if (row[pivot[b]] == 0) continue;
      Rat f = row[pivot[b]] / basis[b][pivot[b]];
      for (int k = 0; k < n; ++k) row[k] -= f * basis[b][k];
    }
    int pc = -1;
    for (int k = 0; k < n; ++k)
      if (row[k] != 0) {
        pc = k;
        break;
      }
    if (pc < 0) continue;
    basis.push_back(std::move(row));
    pivot.push_back(pc);
    if (static_cast<int>(basis.size()) == n) return alpha;
  }

  RatVec out(n);
  for (int k = 0; k < n; ++k) out[k] = Rat(support[0][k]);
  const int r = static_cast<int>(basis.size());
  if (r == 0) return out;  // single-point hull

  RatVec rel(n);
  for (int k = 0; k < n; ++k) rel[k] = alpha[k] - out[k];

  // Normal equations G t = B.rel with G = B B^T, solved by exact
  // Gauss-Jordan; G is invertible because the basis rows are independent.
  RatMat g(r, RatVec(r + 1, Rat(0)));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < n; ++k) g[i][j] += basis[i][k] * basis[j][k];
    for (int k = 0; k < n; ++k) g[i][r] += basis[i][k] * rel[k];
  }
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    for (int row = col; row < r; ++row)
      if (g[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) throw std::logic_error("affine_hull_project: singular Gram");
    std::swap(g[col], g[piv]);
    for (int row = 0; row < r; ++row) {
      if (row == col || g[row][col] == 0) continue;
      Rat f = g[row][col] / g[col][col];
      for (int k = col; k <= r; ++k) g[row][k] -= f * g[col][k];
    }
  }
  for (int i = 0; i < r; ++i) {
    Rat t = g[i][r] / g[i][i];
    for (int k = 0; k < n; ++k) out[k] += t * basis[i][k];
  }
  return out;
}

}  // namespace capkit
