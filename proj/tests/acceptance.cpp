// Acceptance suite. Each criterion prints exactly one PASS/FAIL line and the
// binary exits nonzero if any criterion fails. Tolerances are pinned here on
// purpose: loosening them is a behavior change, not a test fix.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capkit/bipartite.hpp"
#include "capkit/capacity.hpp"
#include "capkit/combin_bounds.hpp"
#include "capkit/inner_product.hpp"
#include "capkit/linear_operator.hpp"
#include "capkit/matrix.hpp"
#include "capkit/preservation.hpp"
#include "capkit/random_instances.hpp"
#include "capkit/sparse_poly.hpp"
#include "capkit/stability.hpp"
#include "oracle.hpp"

namespace {

using namespace capkit;

struct Failure {
  std::string msg;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure{msg};
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int g_failures = 0;

void run_criterion(int id, const std::string& label, double budget_seconds,
                   const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const Failure& f) {
    error = f.msg;
  } catch (const std::exception& e) {
    error = std::string("exception: ") + e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (error.empty() && elapsed > budget_seconds) {
    std::ostringstream os;
    os << "exceeded time budget: " << fmt_double(elapsed) << "s > "
       << fmt_double(budget_seconds) << "s";
    error = os.str();
  }
  if (error.empty()) {
    std::printf("PASS criterion %d: %s (%.2fs)\n", id, label.c_str(), elapsed);
  } else {
    std::printf("FAIL criterion %d: %s :: %s\n", id, label.c_str(),
                error.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

double unif(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

ExponentVec unit_exp(int arity, int k) {
  ExponentVec e(arity, 0);
  e[k] = 1;
  return e;
}

// Product of per-variable affine factors. Every variable appears in its own
// factors, so the Newton polytope is the full box [0, factors]^arity.
PolyD box_product(int arity, int factors, std::mt19937_64& rng) {
  PolyD p = PolyD::constant(arity, 1.0);
  for (int k = 0; k < arity; ++k) {
    for (int f = 0; f < factors; ++f) {
      PolyD lin = PolyD::constant(arity, unif(rng, 0.2, 2.0)) +
                  PolyD::monomial(unit_exp(arity, k), unif(rng, 0.2, 2.0));
      p = p * lin;
    }
  }
  return p;
}

Rat rat_factorial(int n) {
  Rat r(1);
  for (int i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

// ---- criterion bodies -----------------------------------------------------

// Powered linear forms have a product-form capacity. Random instances with
// dyadic direction vectors (denominator 16) so a homogeneous direction sums
// to the degree exactly and face classification is deterministic.
void criterion_linear_power() {
  std::mt19937_64 rng(substream(11, 1));
  CapacityOptions opts;
  // 1e-8 relative accuracy on the value needs far less than the default
  // gradient tolerance; 1e-7 stays achievable at double-precision noise
  // levels for every instance size drawn here.
  opts.grad_tol = 1e-7;
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng() % 4);
    int m = 1 + static_cast<int>(rng() % 6);
    std::vector<double> c(n);
    for (int k = 0; k < n; ++k) c[k] = unif(rng, 0.2, 2.0);
    std::vector<int> q(n, 0);
    for (int j = 0; j < 16; ++j) q[static_cast<int>(rng() % n)] += 1;
    std::vector<double> alpha(n);
    bool all_pos = true;
    for (int k = 0; k < n; ++k) {
      alpha[k] = static_cast<double>(m) * static_cast<double>(q[k]) / 16.0;
      if (q[k] == 0) all_pos = false;
    }
    PolyD lin = PolyD::constant(n, 0.0);
    for (int k = 0; k < n; ++k)
      lin = lin + PolyD::monomial(unit_exp(n, k), c[k]);
    PolyD p = lin.pow(m);
    CapacityResult res = capacity(p, alpha, opts);
    double ref = capacity_linear_power(c, alpha, m);
    require(res.converged, "instance " + std::to_string(t) +
                               ": minimizer did not converge");
    Region expect = (n == 1 || all_pos) ? Region::Interior : Region::Boundary;
    require(res.region == expect,
            "instance " + std::to_string(t) + ": unexpected region " +
                std::string(region_name(res.region)));
    double rel = std::abs(res.value - ref) / std::max(1.0, std::abs(ref));
    require(rel <= 1e-8, "instance " + std::to_string(t) + ": value " +
                             fmt_double(res.value) + " vs closed form " +
                             fmt_double(ref) + " (rel " + fmt_double(rel) +
                             ")");
  }
}

// Doubly stochastic supports pin the capacity at one. Sinkhorn scaling of a
// random positive matrix gives row/column sums 1 up to 1e-12, and the
// capacity of its product polynomial at the all-ones direction must be 1.
void criterion_sinkhorn_unit() {
  std::mt19937_64 rng(substream(11, 2));
  CapacityOptions opts;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    int n = 2 + t % 5;
    MatD a = random_positive_matrix(n, rng);
    MatD s = sinkhorn(a, 1000, 1e-12);
    PolyD p = product_polynomial(s);
    std::vector<double> ones(n, 1.0);
    CapacityResult res = capacity(p, ones, opts);
    require(res.converged, "instance " + std::to_string(t) +
                               ": minimizer did not converge");
    worst = std::max(worst, std::abs(res.value - 1.0));
  }
  require(worst <= 1e-6,
          "max deviation from 1 is " + fmt_double(worst) + " > 1e-6");
}

// The derivative-at-zero operator on (1+x)^k: the image is the constant k,
// exactly, and the capacity ratio equals ((k-1)/k)^(k-1), the tight constant.
void criterion_derivative_ratio() {
  CapacityOptions opts;
  for (int lam = 2; lam <= 8; ++lam) {
    PolyQ p1 = (PolyQ::constant(1, Rat(1)) + PolyQ::variable(1, 0)).pow(lam);
    OperatorQ t = derivative_at_zero_op<Rat>(p1.degree_profile(), 0);
    PolyQ tp = capkit::apply(t, p1);
    require(tp.arity() == 0, "image arity is not 0");
    require(tp.eval({}) == Rat(lam),
            "image of (1+x)^" + std::to_string(lam) + " is not the constant " +
                std::to_string(lam));
    PolyD p1d =
        (PolyD::constant(1, 1.0) + PolyD::variable(1, 0)).pow(lam);
    double cp = capacity_value(p1d, {1.0}, opts);
    double ratio = static_cast<double>(lam) / cp;
    double tight = std::pow((lam - 1.0) / lam, lam - 1.0);
    double rel = std::abs(ratio - tight) / std::max(1.0, std::abs(tight));
    require(rel <= 1e-9, "ratio at k=" + std::to_string(lam) + " is " +
                             fmt_double(ratio) + ", tight constant " +
                             fmt_double(tight) + " (rel " + fmt_double(rel) +
                             ")");
  }
}

// The uniform doubly stochastic matrix J/n: the Ryser permanent equals
// n!/n^n exactly in rationals, and the telescoped product
// prod_{k=2..n} ((k-1)/k)^(k-1) equals the same value exactly.
void criterion_uniform_chain() {
  for (int n = 2; n <= 7; ++n) {
    MatQ u = MatQ::constant(n, n, Rat(1, n));
    Rat expect = rat_factorial(n) / rat_pow(Rat(n), n);
    require(permanent(u) == expect,
            "n=" + std::to_string(n) + ": permanent != n!/n^n");
    Rat telescoped(1);
    for (int k = 2; k <= n; ++k)
      telescoped *= rat_pow(Rat(k - 1, k), k - 1);
    require(telescoped == expect,
            "n=" + std::to_string(n) + ": telescoped product != n!/n^n");
  }
}

// Exact-rational matching cascade on random regular bipartite graphs: for
// every k the k-matching count dominates the cascade bound. Includes the
// complete 3-regular case where the k=n bound is 64/27 and the count is 6.
void criterion_matching_cascade() {
  std::mt19937_64 rng(substream(11, 5));
  for (int t = 0; t < 50; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    int d = 1 + static_cast<int>(rng() % n);
    BipartiteGraph g = random_regular_bipartite(n, d, rng);
    std::vector<Int> counts = all_matching_counts(g);
    for (int k = 0; k <= n; ++k) {
      Rat bound = csikvari_bound_exact(n, n, d, d, k);
      require(Rat(counts[k]) >= bound,
              "instance " + std::to_string(t) + " (n=" + std::to_string(n) +
                  ", d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                  "): count below bound");
    }
  }
  require(csikvari_bound_exact(3, 3, 3, 3, 3) == Rat(64, 27),
          "complete 3x3 bound at k=3 is not 64/27");
  BipartiteGraph k33 = BipartiteGraph::complete(3, 3);
  std::vector<Int> c33 = all_matching_counts(k33);
  require(c33[3] == 6, "complete 3x3 has 6 perfect matchings");
  require(Rat(c33[3]) >= Rat(64, 27), "complete 3x3 bound violated");
}

// Weighted matching counts equal derivative sums on biregular graphs:
// a^(m-k) * mu_k equals the sum over all k-subsets S of columns of the
// S-derivative of the biadjacency product polynomial at the all-ones point.
// Recomputed here from first principles in exact rationals.
void criterion_derivation_identity() {
  std::mt19937_64 rng(substream(11, 6));
  struct Shape {
    int m, n, a, b;
  };
  const std::vector<Shape> shapes = {
      {2, 2, 1, 1}, {2, 2, 2, 2}, {3, 3, 2, 2}, {3, 3, 3, 3}, {4, 4, 2, 2},
      {4, 4, 3, 3}, {2, 4, 2, 1}, {3, 6, 2, 1}, {4, 6, 3, 2}, {4, 8, 2, 1},
      {2, 6, 3, 1}, {5, 5, 2, 2}, {4, 4, 4, 4}, {5, 5, 4, 4}, {6, 6, 2, 2}};
  for (int t = 0; t < 20; ++t) {
    const Shape s = shapes[t % shapes.size()];
    BipartiteGraph g = random_biregular(s.m, s.n, s.a, s.b, rng);
    MatQ biadj = g.biadjacency_rational();
    PolyQ pm = product_polynomial(biadj);
    std::vector<Int> counts = all_matching_counts(g);
    std::vector<Rat> ones(s.n, Rat(1));
    int kmax = std::min(s.m, s.n);
    for (int k = 0; k <= kmax; ++k) {
      Rat lhs = rat_pow(Rat(s.a), s.m - k) * Rat(counts[k]);
      Rat rhs(0);
      if (k == 0) {
        rhs = pm.eval(ones);
      } else {
        std::vector<int> sel(k);
        for (int i = 0; i < k; ++i) sel[i] = i;
        do {
          ExponentVec mu(s.n, 0);
          for (int i : sel) mu[i] = 1;
          rhs += partial_derivative(pm, mu).eval(ones);
        } while (oracle::next_combination(sel, s.n));
      }
      require(lhs == rhs, "shape (" + std::to_string(s.m) + "," +
                              std::to_string(s.n) + "," + std::to_string(s.a) +
                              "," + std::to_string(s.b) + ") instance " +
                              std::to_string(t) + " k=" + std::to_string(k) +
                              ": identity fails");
    }
  }
}

// The inner product bound on random box products: the profile-weighted inner
// product of two positive-coefficient polynomials dominates the capacity
// product, and the single-factor case (1+x, 1+x) at direction 1/2 is tight.
void criterion_inner_product() {
  std::mt19937_64 rng(substream(11, 7));
  VerifyOptions vo;
  vo.tol = 1e-7;
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 3);
    int j = 1 + static_cast<int>(rng() % 3);
    PolyD p = box_product(n, j, rng);
    PolyD q = box_product(n, j, rng);
    DegreeProfile lam = DegreeProfile::uniform(n, j);
    std::vector<double> alpha(n);
    for (int k = 0; k < n; ++k) alpha[k] = unif(rng, 0.1, 0.9) * j;
    BoundReport rep = verify_inner_product_bound(p, q, lam, alpha, vo);
    require(rep.status != ReportStatus::Violated,
            "instance " + std::to_string(t) + ": bound violated, slack " +
                fmt_double(rep.slack));
  }
  PolyD affine = PolyD::constant(1, 1.0) + PolyD::variable(1, 0);
  BoundReport tight = verify_inner_product_bound(
      affine, affine, DegreeProfile::uniform(1, 1), {0.5}, vo);
  require(std::abs(tight.lhs - 2.0) <= 1e-12,
          "tight case lhs is " + fmt_double(tight.lhs) + ", expected 2");
  require(std::abs(tight.rhs - 2.0) <= 1e-9,
          "tight case rhs is " + fmt_double(tight.rhs) + ", expected 2");
}

// Operator symbols reproduce the operator action exactly: for random built-in
// operators, rational polynomials and rational evaluation points, the
// symbol-route value agrees with the direct application, exact slack zero.
void criterion_symbol_identity() {
  std::mt19937_64 rng(substream(11, 8));
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng() % 2);
    std::vector<int> bounds(n);
    for (int k = 0; k < n; ++k) bounds[k] = 1 + static_cast<int>(rng() % 3);
    DegreeProfile lam(bounds);
    OperatorQ t_op = [&]() -> OperatorQ {
      switch (t % 5) {
        case 0:
          return identity_op<Rat>(lam);
        case 1:
          return derivative_at_zero_op<Rat>(lam,
                                            static_cast<int>(rng() % n));
        case 2: {
          std::vector<Rat> a(n);
          for (auto& v : a)
            v = Rat(1 + static_cast<int>(rng() % 3),
                    1 + static_cast<int>(rng() % 2));
          return evaluation_op<Rat>(lam, a);
        }
        case 3:
          return constant_term_op<Rat>(lam);
        default: {
          int kmax = *std::min_element(bounds.begin(), bounds.end());
          return matching_operator<Rat>(lam,
                                        static_cast<int>(rng() % (kmax + 1)));
        }
      }
    }();
    PolyQ p(n);
    ExponentVec mu(n, 0);
    do {
      if (rng() % 2 == 0) continue;
      p = p + PolyQ::monomial(mu, Rat(1 + static_cast<int>(rng() % 4),
                                      1 + static_cast<int>(rng() % 3)));
    } while (next_in_box(mu, lam));
    p = p + PolyQ::constant(n, Rat(1 + static_cast<int>(rng() % 3)));
    std::vector<Rat> x0(t_op.out_arity);
    for (auto& v : x0)
      v = Rat(static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2));
    BoundReport rep = symbol_identity_check(t_op, p, x0);
    require(rep.status == ReportStatus::Holds,
            "instance " + std::to_string(t) + ": symbol route disagrees");
    require(rep.slack == 0.0,
            "instance " + std::to_string(t) + ": slack not exactly zero");
  }
}

// Capacity of (1+x/k)^k at direction 1 increases in k and approaches e.
// Coefficients come from the stable downward recurrence c_{j+1} =
// c_j (k-j) / (k (j+1)); terms below 1e-300 are dropped (they cannot move
// the minimizer, and keeping them only risks underflow noise).
void criterion_e_limit() {
  CapacityOptions opts;
  double prev = 0.0;
  double last = 0.0;
  for (int lam = 4; lam <= 4096; lam *= 2) {
    PolyD p(1);
    double c = 1.0;
    for (int j = 0; j <= lam; ++j) {
      p = p + PolyD::monomial(ExponentVec{j}, c);
      c *= static_cast<double>(lam - j) /
           (static_cast<double>(lam) * (j + 1));
      if (c < 1e-300) break;
    }
    CapacityResult res = capacity(p, {1.0}, opts);
    require(res.converged,
            "k=" + std::to_string(lam) + ": minimizer did not converge");
    require(res.value > prev, "k=" + std::to_string(lam) +
                                  ": sequence not strictly increasing");
    prev = res.value;
    last = res.value;
  }
  const double e = std::exp(1.0);
  require(std::abs(last - e) <= 1e-3,
          "limit value " + fmt_double(last) + " is not within 1e-3 of e");
}

// Random multiaffine stable polynomials pass the pointwise strong Rayleigh
// inequality on random real points; the non-stable control 1 + x1*x2 fails
// it at the origin.
void criterion_strong_rayleigh() {
  std::mt19937_64 rng(substream(11, 10));
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    PolyD p = random_multiaffine_stable(n, rng);
    std::vector<std::vector<double>> pts(20, std::vector<double>(n));
    for (auto& pt : pts)
      for (double& v : pt) v = unif(rng, -2.0, 2.0);
    BoundReport rep = strong_rayleigh_check(p, pts, 1e-9);
    require(rep.status == ReportStatus::Holds,
            "instance " + std::to_string(t) + ": inequality violated, slack " +
                fmt_double(rep.slack));
  }
  PolyD bad = PolyD::constant(2, 1.0) +
              PolyD::monomial(ExponentVec{1, 1}, 1.0);
  BoundReport neg = strong_rayleigh_check(bad, {{0.0, 0.0}}, 1e-9);
  require(neg.status == ReportStatus::Violated,
          "control polynomial 1 + x1*x2 was not flagged");
}

// The convolution corollary on random box products, plus the exact symbol of
// the convolution lift: it must equal the trinomial expansion (z+w+zwx)^k.
void criterion_convolution() {
  std::mt19937_64 rng(substream(11, 11));
  VerifyOptions vo;
  vo.tol = 1e-7;
  for (int t = 0; t < 50; ++t) {
    const int n = 2;
    const int j = 2;
    PolyD p = box_product(n, j, rng);
    PolyD q = box_product(n, j, rng);
    DegreeProfile lam = DegreeProfile::uniform(n, j);
    std::vector<double> beta(n), gamma(n);
    for (int k = 0; k < n; ++k) {
      beta[k] = unif(rng, 0.55, 0.95) * j;
      gamma[k] = unif(rng, 0.55, 0.95) * j;
    }
    BoundReport rep = boxplus_corollary_check(p, q, lam, beta, gamma, vo);
    require(rep.status != ReportStatus::Violated,
            "instance " + std::to_string(t) + ": corollary violated, slack " +
                fmt_double(rep.slack));
  }
  for (int lam = 1; lam <= 3; ++lam) {
    OperatorQ lift = boxplus_lift_op<Rat>(DegreeProfile({lam}));
    PolyQ sym = symbol_bounded(lift);
    PolyQ tri = PolyQ::monomial(ExponentVec{1, 0, 0}, Rat(1)) +
                PolyQ::monomial(ExponentVec{0, 1, 0}, Rat(1)) +
                PolyQ::monomial(ExponentVec{1, 1, 1}, Rat(1));
    require(sym == tri.pow(lam),
            "lift symbol at k=" + std::to_string(lam) +
                " is not the trinomial power");
  }
}

}  // namespace

int main() {
  run_criterion(1, "powered linear forms match the product closed form", 5.0,
                criterion_linear_power);
  run_criterion(2, "Sinkhorn-scaled products have unit capacity", 30.0,
                criterion_sinkhorn_unit);
  run_criterion(3, "derivative at zero attains the tight capacity ratio", 5.0,
                criterion_derivative_ratio);
  run_criterion(4, "uniform doubly stochastic chain is exact and extremal",
                1.0, criterion_uniform_chain);
  run_criterion(5, "matching counts dominate the cascade bound", 60.0,
                criterion_matching_cascade);
  run_criterion(6, "weighted matching counts equal derivative sums", 60.0,
                criterion_derivation_identity);
  run_criterion(7, "inner product bound holds on random box products", 30.0,
                criterion_inner_product);
  run_criterion(8, "operator symbols reproduce the action exactly", 10.0,
                criterion_symbol_identity);
  run_criterion(9, "capacity of (1+x/k)^k increases to e", 5.0,
                criterion_e_limit);
  run_criterion(10, "strong Rayleigh inequality holds for stable products",
                10.0, criterion_strong_rayleigh);
  run_criterion(11, "convolution corollary holds and the lift symbol is exact",
                30.0, criterion_convolution);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
