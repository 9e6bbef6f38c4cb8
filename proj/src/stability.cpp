#include "capkit/stability.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "capkit/random_instances.hpp"

namespace capkit {

namespace {

// Remainder of a by b, both trimmed, deg b >= 0.
DenseUni<Rat> dense_rem(DenseUni<Rat> a, const DenseUni<Rat>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[off + j] -= f * b[j];
    a.pop_back();
    dense_trim(a);
    if (a.empty()) break;
  }
  return a;
}

DenseUni<Rat> dense_monic(DenseUni<Rat> p) {
  if (p.empty()) return p;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

DenseUni<Rat> dense_gcd(DenseUni<Rat> a, DenseUni<Rat> b) {
  dense_trim(a);
  dense_trim(b);
  while (!b.empty()) {
    DenseUni<Rat> r = dense_monic(dense_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return dense_monic(a);
}

DenseUni<Rat> dense_div_exact(const DenseUni<Rat>& a, const DenseUni<Rat>& b) {
  DenseUni<Rat> q(a.size() - b.size() + 1, Rat(0));
  DenseUni<Rat> r = a;
  while (r.size() >= b.size() && !r.empty()) {
    Rat f = r.back() / b.back();
    size_t off = r.size() - b.size();
    q[off] = f;
    for (size_t j = 0; j < b.size(); ++j) r[off + j] -= f * b[j];
    r.pop_back();
    dense_trim(r);
  }
  return q;
}

int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Number of distinct real roots of a squarefree polynomial via the Sturm
// chain evaluated at -inf and +inf.
int sturm_distinct_real_roots(const DenseUni<Rat>& sf) {
  std::vector<DenseUni<Rat>> chain;
  chain.push_back(sf);
  chain.push_back(dense_derivative(sf));
  while (chain.back().size() > 1) {
    DenseUni<Rat> r = dense_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  auto variations = [&](bool at_minus_inf) {
    int var = 0, prev = 0;
    for (const auto& q : chain) {
      if (q.empty()) continue;
      int s = sign_of(q.back());
      if (at_minus_inf && (q.size() - 1) % 2 == 1) s = -s;
      if (s != 0 && prev != 0 && s != prev) ++var;
      if (s != 0) prev = s;
    }
    return var;
  };
  return variations(true) - variations(false);
}

}  // namespace

bool dense_real_rooted_exact(DenseUni<Rat> p) {
  dense_trim(p);
  if (p.size() <= 1) return true;  // zero or constant: vacuous
  size_t low = 0;
  while (p[low] == 0) ++low;  // roots at the origin are real
  if (low > 0) p.erase(p.begin(), p.begin() + low);
  if (p.size() <= 2) return true;  // degree <= 1

  DenseUni<Rat> g = dense_gcd(p, dense_derivative(p));
  DenseUni<Rat> sf = g.size() <= 1 ? p : dense_div_exact(p, g);
  int deg = static_cast<int>(sf.size()) - 1;
  if (deg <= 1) return true;
  return sturm_distinct_real_roots(sf) == deg;
}

bool dense_real_rooted(const DenseUni<double>& p_in, double tol) {
  DenseUni<double> p = p_in;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.size() <= 1) return true;
  size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) p.erase(p.begin(), p.begin() + low);
  const int d = static_cast<int>(p.size()) - 1;
  if (d <= 1) return true;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    // eigensolver failure: decide exactly
    DenseUni<Rat> q;
    for (double c : p) q.push_back(rat_from_double(c));
    return dense_real_rooted_exact(q);
  }

  bool all_real = true;
  bool borderline = false;
  for (int i = 0; i < d; ++i) {
    double im = std::fabs(es.eigenvalues()[i].imag());
    double scale = 1 + std::fabs(es.eigenvalues()[i].real());
    if (im > tol * scale) all_real = false;
    if (im > 0.1 * tol * scale && im < 10 * tol * scale) borderline = true;
  }
  if (!borderline) return all_real;
  DenseUni<Rat> q;
  for (double c : p) q.push_back(rat_from_double(c));
  return dense_real_rooted_exact(q);
}

bool is_real_rooted(const PolyQ& p) {
  if (p.arity() != 1)
    throw std::invalid_argument("is_real_rooted: univariate input required");
  DenseUni<Rat> d(p.max_total_degree() + 1, Rat(0));
  for (const auto& [mu, c] : p.terms()) d[mu[0]] = c;
  return dense_real_rooted_exact(std::move(d));
}

bool is_real_rooted(const PolyD& p, double tol) {
  if (p.arity() != 1)
    throw std::invalid_argument("is_real_rooted: univariate input required");
  DenseUni<double> d(p.max_total_degree() + 1, 0.0);
  for (const auto& [mu, c] : p.terms()) d[mu[0]] = c;
  return dense_real_rooted(d, tol);
}

namespace {

// Real-rootedness for a float line restriction. The restriction coefficients
// carry rounding from the substitution, so an exact check of them answers the
// wrong question: a clustered real pair perturbs into a conjugate pair with
// an imaginary part far above eigensolver noise (observed up to ~1e-3
// relative on degree-9 products). Genuine instability shows imaginary parts
// of order the root magnitude, so one coarse threshold separates the two.
bool restriction_real_rooted(const DenseUni<double>& p_in) {
  constexpr double kRelImagTol = 5e-3;
  DenseUni<double> p = p_in;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.size() <= 1) return true;
  size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) p.erase(p.begin(), p.begin() + low);
  const int d = static_cast<int>(p.size()) - 1;
  if (d <= 1) return true;

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    DenseUni<Rat> q;
    for (double c : p) q.push_back(rat_from_double(c));
    return dense_real_rooted_exact(q);
  }
  for (int i = 0; i < d; ++i) {
    double im = std::fabs(es.eigenvalues()[i].imag());
    double scale = 1 + std::fabs(es.eigenvalues()[i].real());
    if (im > kRelImagTol * scale) return false;
  }
  return true;
}

void random_line(int n, std::uint64_t seed, int trial, std::vector<double>& a,
                 std::vector<double>& b) {
  std::mt19937_64 rng(substream(seed, static_cast<std::uint64_t>(trial)));
  std::uniform_real_distribution<double> base(-3.0, 3.0);
  std::uniform_real_distribution<double> dir(0.1, 3.0);
  a.resize(n);
  b.resize(n);
  for (int k = 0; k < n; ++k) a[k] = base(rng);
  for (int k = 0; k < n; ++k) b[k] = dir(rng);
}

template <class C>
StabilityVerdict run_line_trials(const SparsePoly<C>& p, int trials,
                                 std::uint64_t seed) {
  if (p.is_zero())
    throw std::invalid_argument("stability test: zero polynomial");
  StabilityVerdict v;
  v.trials = trials;
  const int n = p.arity();
  std::vector<double> a, b;
  for (int t = 0; t < trials; ++t) {
    random_line(n, seed, t, a, b);
    bool ok;
    DenseUni<double> restriction_d;
    if constexpr (std::is_same_v<C, Rat>) {
      std::vector<Rat> ar, br;
      for (double x : a) ar.push_back(rat_from_double(x));
      for (double x : b) br.push_back(rat_from_double(x));
      DenseUni<Rat> r = restrict_to_line(p, ar, br);
      ok = dense_real_rooted_exact(r);
      for (const Rat& c : r) restriction_d.push_back(rat_to_double(c));
    } else {
      restriction_d = restrict_to_line(p, a, b);
      ok = restriction_real_rooted(restriction_d);
    }
    if (!ok) {
      v.stable = false;
      v.falsified = true;
      v.line_a = a;
      v.line_b = b;
      v.restriction = restriction_d;
      v.trials = t + 1;
      return v;
    }
  }
  return v;
}

}  // namespace

StabilityVerdict probabilistic_stability_test(const PolyD& p, int trials,
                                              std::uint64_t seed) {
  return run_line_trials(p, trials, seed);
}

StabilityVerdict probabilistic_stability_test(const PolyQ& p, int trials,
                                              std::uint64_t seed) {
  return run_line_trials(p, trials, seed);
}

BoundReport strong_rayleigh_check(const PolyD& p,
                                  const std::vector<std::vector<double>>& points,
                                  double tol) {
  if (!p.is_multiaffine())
    throw std::invalid_argument("strong_rayleigh_check: multiaffine input required");
  const int n = p.arity();
  if (n < 2)
    return make_trivial_report("strong_rayleigh", "fewer than two variables");

  std::vector<PolyD> d1;
  d1.reserve(n);
  for (int i = 0; i < n; ++i) d1.push_back(partial_derivative(p, i));

  bool have = false;
  double worst_slack = 0, worst_lhs = 0, worst_rhs = 0;
  std::string where;
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const auto& x = points[pi];
    double px = p.eval(x);
    for (int i = 0; i < n; ++i) {
      double dix = d1[i].eval(x);
      for (int j = i + 1; j < n; ++j) {
        PolyD dij = partial_derivative(d1[i], j);
        double lhs = dix * d1[j].eval(x);
        double rhs = px * dij.eval(x);
        double slack = lhs - rhs;
        double norm = slack + tol * std::max(1.0, std::fabs(rhs));
        double worst_norm =
            worst_slack + tol * std::max(1.0, std::fabs(worst_rhs));
        if (!have || norm < worst_norm) {
          have = true;
          worst_slack = slack;
          worst_lhs = lhs;
          worst_rhs = rhs;
          where = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                  ") at point " + std::to_string(pi);
        }
      }
    }
  }
  if (!have) return make_trivial_report("strong_rayleigh", "no points given");
  return make_inequality_report("strong_rayleigh", worst_lhs, worst_rhs, tol,
                                where);
}

}  // namespace capkit
