#include "capkit/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace capkit {

LogPartition log_partition(const PolyD& p, const Eigen::VectorXd& y) {
  if (p.is_zero())
    throw std::invalid_argument("log_partition: zero polynomial");
  const int n = p.arity();
  if (y.size() != n)
    throw std::invalid_argument("log_partition: point arity mismatch");

  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> expo;
  expo.reserve(p.term_count());
  for (const auto& [mu, c] : p.terms()) {
    double a = std::log(c);
    for (int k = 0; k < n; ++k) a += mu[k] * y[k];
    expo.push_back(a);
    shift = std::max(shift, a);
  }

  double z = 0;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(n, n);
  size_t idx = 0;
  for (const auto& [mu, c] : p.terms()) {
    double w = std::exp(expo[idx++] - shift);
    z += w;
    for (int k = 0; k < n; ++k) {
      g[k] += w * mu[k];
      for (int l = 0; l <= k; ++l) m2(k, l) += w * mu[k] * mu[l];
    }
  }

  LogPartition lp;
  lp.value = shift + std::log(z);
  lp.grad = g / z;
  lp.hess.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l <= k; ++l) {
      double h = m2(k, l) / z - lp.grad[k] * lp.grad[l];
      lp.hess(k, l) = h;
      lp.hess(l, k) = h;
    }
  return lp;
}

namespace {

// Damped Newton on F(y) = log p(e^y) - alpha.y from y = 0.  F is convex;
// Armijo backtracking plus an escalating ridge on the Hessian keeps steps
// productive when the support is degenerate along some directions.
void newton_minimize(const PolyD& p, const std::vector<double>& alpha,
                     const CapacityOptions& opts, CapacityResult& out) {
  const int n = p.arity();
  Eigen::VectorXd a(n);
  for (int k = 0; k < n; ++k) a[k] = alpha[k];

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  LogPartition lp = log_partition(p, y);
  double fy = lp.value - a.dot(y);

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    Eigen::VectorXd g = lp.grad - a;
    out.grad_norm = g.lpNorm<Eigen::Infinity>();
    if (out.grad_norm <= opts.grad_tol) {
      out.converged = true;
      break;
    }

    double trace = std::max(lp.hess.trace(), 1.0);
    double ridge = 0;
    Eigen::VectorXd d;
    for (int attempt = 0; attempt < 9; ++attempt) {
      Eigen::MatrixXd h = lp.hess;
      if (ridge > 0) h.diagonal().array() += ridge;
      Eigen::LLT<Eigen::MatrixXd> llt(h);
      if (llt.info() == Eigen::Success) {
        d = llt.solve(-g);
        if (d.allFinite() && g.dot(d) < 0) break;
      }
      d.resize(0);
      ridge = ridge == 0 ? 1e-12 * trace : ridge * 100;
    }
    if (d.size() == 0) d = -g;  // last resort: gradient step

    double gd = g.dot(d);
    double t = 1;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      Eigen::VectorXd yt = y + t * d;
      if ((yt.array() == y.array()).all()) break;  // step below 1 ulp
      LogPartition lpt = log_partition(p, yt);
      double ft = lpt.value - a.dot(yt);
      bool armijo = std::isfinite(ft) && ft < fy + 1e-4 * t * gd;
      // Terminal phase: near the optimum the f-improvement of a Newton step
      // falls below double resolution while the gradient still has room to
      // contract.  Accept a full step that leaves f unchanged to rounding
      // provided it halves the gradient; the forced geometric decrease rules
      // out a treadmill.
      bool polish = !armijo && t == 1 && std::isfinite(ft) &&
                    ft <= fy + 1e-12 * (1 + std::fabs(fy)) &&
                    (lpt.grad - a).lpNorm<Eigen::Infinity>() <=
                        0.5 * out.grad_norm;
      if (armijo || polish) {
        y = yt;
        lp = lpt;
        fy = ft;
        moved = true;
        break;
      }
      t /= 2;
    }
    if (!moved) break;  // no descent achievable: report point, not converged
  }

  out.iterations = it;
  out.value = std::exp(fy);
  out.minimizer.assign(y.data(), y.data() + n);
}

}  // namespace

CapacityResult capacity(const PolyD& p, const std::vector<double>& alpha,
                        const CapacityOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("capacity: zero polynomial");
  if (static_cast<int>(alpha.size()) != p.arity())
    throw std::invalid_argument("capacity: alpha arity mismatch");

  CapacityResult res;
  if (p.arity() == 0) {
    res.value = p.terms().begin()->second;
    res.region = Region::Interior;
    res.converged = true;
    res.grad_norm = 0;
    return res;
  }

  RatVec a;
  a.reserve(alpha.size());
  for (double v : alpha) a.push_back(rat_from_double(v));
  std::vector<double> av = alpha;

  // Snap queries sitting a rounding error off the hull's affine span onto
  // it; exact membership would otherwise report Outside for a point the
  // caller meant to place on the span (homogeneous p with sum(alpha) equal
  // to the degree only up to double rounding, say).  Points genuinely off
  // the span move too far and are left untouched.
  RatVec proj = affine_hull_project(p.support(), a);
  double drift = 0, scale = 1;
  for (size_t k = 0; k < av.size(); ++k) {
    drift = std::max(drift, std::fabs(rat_to_double(proj[k] - a[k])));
    scale = std::max(scale, std::fabs(av[k]));
  }
  if (drift <= 1e-9 * scale) {
    a = std::move(proj);
    for (size_t k = 0; k < av.size(); ++k) av[k] = rat_to_double(a[k]);
  }

  MembershipResult mem = newton_membership(p.support(), a);
  res.region = mem.region;
  if (mem.region == Region::Outside) {
    res.value = 0;
    res.converged = true;
    return res;
  }

  PolyD q = p;
  if (mem.region == Region::Boundary) {
    res.face = mem.face;
    std::set<ExponentVec> keep(mem.face.begin(), mem.face.end());
    PolyD r(p.arity());
    for (const auto& [mu, c] : p.terms())
      if (keep.count(mu)) r.add_term(mu, c);
    q = r;
  }
  newton_minimize(q, av, opts, res);
  return res;
}

double capacity_linear_power(const std::vector<double>& c,
                             const std::vector<double>& alpha, double m) {
  if (c.size() != alpha.size())
    throw std::invalid_argument("capacity_linear_power: size mismatch");
  double sum = 0;
  for (double a : alpha) {
    if (a < 0)
      throw std::invalid_argument("capacity_linear_power: negative alpha");
    sum += a;
  }
  if (std::fabs(sum - m) > 1e-9 * std::max(1.0, std::fabs(m)))
    throw std::invalid_argument("capacity_linear_power: sum(alpha) != m");
  for (double v : c)
    if (v < 0)
      throw std::invalid_argument("capacity_linear_power: negative weight");

  double log_val = 0;
  for (size_t k = 0; k < c.size(); ++k) {
    if (alpha[k] == 0) continue;  // 0^0 = 1
    if (c[k] == 0) return 0;      // alpha puts mass on an absent variable
    log_val += alpha[k] * (std::log(m) + std::log(c[k]) - std::log(alpha[k]));
  }
  return std::exp(log_val);
}

std::vector<CapacityResult> capacity_of_truncation_sequence(
    const std::function<double(const ExponentVec&)>& coef, int arity,
    const std::vector<double>& alpha, const std::vector<int>& lambdas,
    const CapacityOptions& opts) {
  std::vector<CapacityResult> out;
  out.reserve(lambdas.size());
  for (int lambda : lambdas) {
    if (lambda < 1)
      throw std::invalid_argument("truncation sequence: lambda < 1");
    DegreeProfile prof = DegreeProfile::uniform(arity, lambda);
    // Per-variable weight C(lambda,j)/lambda^j via the ratio recurrence
    // w_0 = 1, w_{j+1} = w_j (lambda - j) / ((j + 1) lambda).
    std::vector<double> w(lambda + 1);
    w[0] = 1;
    for (int j = 0; j < lambda; ++j)
      w[j + 1] = w[j] * (double(lambda - j) / (double(j + 1) * lambda));

    PolyD f(arity);
    ExponentVec mu(arity, 0);
    do {
      double c = coef(mu);
      if (c == 0) continue;
      if (c < 0)
        throw std::invalid_argument("truncation sequence: negative coefficient");
      double t = c;
      for (int k = 0; k < arity; ++k) t *= w[mu[k]];
      if (t > 0) f.add_term(mu, t);
    } while (next_in_box(mu, prof));
    out.push_back(capacity(f, alpha, opts));
  }
  return out;
}

nlohmann::json CapacityResult::to_json() const {
  nlohmann::json j{{"value", value},
                   {"region", region_name(region)},
                   {"converged", converged},
                   {"iterations", iterations}};
  if (!minimizer.empty()) j["minimizer"] = minimizer;
  if (std::isfinite(grad_norm)) j["grad_norm"] = grad_norm;
  if (!face.empty()) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& mu : face) f.push_back(mu);
    j["face"] = f;
  }
  return j;
}

}  // namespace capkit
