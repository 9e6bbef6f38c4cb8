#include "capkit/preservation.hpp"

#include <cmath>

namespace capkit {

namespace {

double xlogx(double x) { return x <= 0 ? 0.0 : x * std::log(x); }

std::vector<double> concat(const std::vector<double>& a,
                           const std::vector<double>& b) {
  std::vector<double> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void admit(const PolyD& p, const VerifyOptions& opts) {
  if (opts.override_stability) return;
  StabilityVerdict v =
      probabilistic_stability_test(p, opts.stability_trials, opts.stability_seed);
  if (!v.stable) throw StabilityRejection(std::move(v));
}

double power_term(const std::vector<double>& alpha) {
  double s = 0;
  for (double a : alpha) s += xlogx(a);
  return std::exp(s);
}

}  // namespace

double bounded_symbol_factor(const std::vector<double>& alpha,
                             const DegreeProfile& lambda) {
  if (static_cast<int>(alpha.size()) != lambda.arity())
    throw std::invalid_argument("bounded_symbol_factor: arity mismatch");
  double s = 0;
  for (size_t k = 0; k < alpha.size(); ++k) {
    double a = alpha[k], l = lambda.bounds[k];
    if (a < 0 || a > l)
      throw std::invalid_argument("bounded_symbol_factor: alpha outside [0, lambda]");
    s += xlogx(a) + xlogx(l - a) - xlogx(l);
  }
  return std::exp(s);
}

double trans_symbol_factor(const std::vector<double>& alpha) {
  double s = 0;
  for (double a : alpha) {
    if (a < 0)
      throw std::invalid_argument("trans_symbol_factor: negative alpha");
    s += xlogx(a) - a;
  }
  return std::exp(s);
}

PreservationBound preservation_bound_bounded(const OperatorD& t,
                                             const std::vector<double>& alpha,
                                             const std::vector<double>& beta,
                                             const CapacityOptions& opts) {
  if (!t.bounded())
    throw std::invalid_argument("preservation_bound_bounded: unbounded operator");
  PreservationBound r;
  r.factor = bounded_symbol_factor(alpha, *t.profile);
  PolyD symb = symbol_bounded(t);
  if (symb.is_zero()) {
    r.bound = 0;
    return r;
  }
  r.symbol_cap = capacity(symb, concat(alpha, beta), opts);
  r.bound = r.factor * r.symbol_cap.value;
  return r;
}

PreservationBound preservation_bound_trans(const OperatorD& t, int order,
                                           const std::vector<double>& alpha,
                                           const std::vector<double>& beta,
                                           const CapacityOptions& opts) {
  if (t.bounded())
    throw std::invalid_argument("preservation_bound_trans: bounded operator");
  PreservationBound r;
  r.factor = trans_symbol_factor(alpha);
  PolyD symb = symbol_trans_truncated(t, order);
  if (symb.is_zero()) {
    r.bound = 0;
    return r;
  }
  r.symbol_cap = capacity(symb, concat(alpha, beta), opts);
  r.bound = r.factor * r.symbol_cap.value;
  return r;
}

BoundReport verify_preservation(const OperatorD& t, const PolyD& p,
                                const std::vector<double>& alpha,
                                const std::vector<double>& beta,
                                const VerifyOptions& opts) {
  admit(p, opts);
  CapacityResult cp = capacity(p, alpha, opts.capacity);
  if (cp.value <= 0)
    return make_trivial_report("preservation",
                               "cpc_alpha(p) = 0: alpha outside the Newton polytope");
  PolyD tp = capkit::apply(t, p);
  if (tp.is_zero())
    return make_trivial_report("preservation", "T annihilates p");
  CapacityResult ctp = capacity(tp, beta, opts.capacity);

  PreservationBound pb =
      t.bounded() ? preservation_bound_bounded(t, alpha, beta, opts.capacity)
                  : preservation_bound_trans(t, t.trunc_order, alpha, beta,
                                             opts.capacity);
  double lhs = ctp.value / cp.value;
  return make_inequality_report("preservation", lhs, pb.bound, opts.tol);
}

BoundReport verify_inner_product_bound(const PolyD& p, const PolyD& q,
                                       const std::optional<DegreeProfile>& lambda,
                                       const std::vector<double>& alpha,
                                       const VerifyOptions& opts) {
  admit(p, opts);
  admit(q, opts);
  if (lambda) {
    double lhs = inner_product_bounded(p, q, *lambda);
    double cp = capacity_value(p, alpha, opts.capacity);
    double cq = capacity_value(q, alpha, opts.capacity);
    if (cp <= 0 || cq <= 0)
      return make_trivial_report("inner_product_bound",
                                 "a capacity factor vanishes");
    double rhs = bounded_symbol_factor(alpha, *lambda) * cp * cq;
    return make_inequality_report("inner_product_bound", lhs, rhs, opts.tol);
  }
  double lhs = inner_product_trans(p, q);
  double cp = capacity_value(p, alpha, opts.capacity);
  double cq = capacity_value(q, alpha, opts.capacity);
  if (cp <= 0 || cq <= 0)
    return make_trivial_report("inner_product_bound",
                               "a capacity factor vanishes");
  double rhs = trans_symbol_factor(alpha) * cp * cq;
  return make_inequality_report("inner_product_bound", lhs, rhs, opts.tol);
}

BoundReport boxplus_corollary_check(const PolyD& p, const PolyD& q,
                                    const DegreeProfile& lambda,
                                    const std::vector<double>& beta,
                                    const std::vector<double>& gamma,
                                    const VerifyOptions& opts) {
  admit(p, opts);
  admit(q, opts);
  const size_t n = beta.size();
  if (gamma.size() != n || static_cast<size_t>(lambda.arity()) != n)
    throw std::invalid_argument("boxplus_corollary_check: arity mismatch");
  std::vector<double> alpha(n);
  for (size_t k = 0; k < n; ++k) {
    alpha[k] = beta[k] + gamma[k] - lambda.bounds[k];
    if (alpha[k] < 0)
      return make_trivial_report("boxplus_corollary",
                                 "beta + gamma - lambda has a negative entry");
  }
  PolyD pq = boxplus(p, q, lambda);
  if (pq.is_zero())
    return make_trivial_report("boxplus_corollary", "p boxplus q = 0");
  double cpq = capacity_value(pq, alpha, opts.capacity);
  double cb = capacity_value(p, beta, opts.capacity);
  double cg = capacity_value(q, gamma, opts.capacity);
  if (cpq <= 0 || cb <= 0 || cg <= 0)
    return make_trivial_report("boxplus_corollary", "a capacity factor vanishes");

  double lambda_term = 0;
  for (int b : lambda.bounds) lambda_term += xlogx(double(b));
  double lhs = power_term(alpha) * cpq;
  double rhs = std::exp(-lambda_term) * power_term(beta) * cb *
               power_term(gamma) * cg;
  return make_inequality_report("boxplus_corollary", lhs, rhs, opts.tol);
}

BoundReport gurvits_conjecture_probe(const PolyD& p, const PolyD& q,
                                     const std::vector<double>& alpha,
                                     const VerifyOptions& opts) {
  admit(p, opts);
  admit(q, opts);
  int dp = 0, dq = 0;
  if (!p.is_homogeneous(&dp) || !q.is_homogeneous(&dq) || dp != dq)
    throw std::invalid_argument(
        "gurvits_conjecture_probe: homogeneous inputs of equal degree required");
  double asum = 0;
  for (double a : alpha) asum += a;
  if (std::fabs(asum - dp) > 1e-9 * std::max(1.0, double(dp)))
    throw std::invalid_argument("gurvits_conjecture_probe: sum(alpha) != degree");

  double lhs = inner_product_multinomial(p, q);
  double cp = capacity_value(p, alpha, opts.capacity);
  double cq = capacity_value(q, alpha, opts.capacity);
  if (cp <= 0 || cq <= 0)
    return make_trivial_report("gurvits_conjecture",
                               "a capacity factor vanishes");
  double rhs = power_term(alpha) * std::exp(-xlogx(double(dp))) * cp * cq;
  return make_inequality_report("gurvits_conjecture", lhs, rhs, opts.tol);
}

}  // namespace capkit
