#pragma once

#include "capkit/bound_report.hpp"
#include "capkit/linear_operator.hpp"
#include "capkit/sparse_poly.hpp"
#include "capkit/transforms.hpp"

namespace capkit {

// <p, q>^lambda = sum_mu p_mu q_mu / C(lambda, mu).
template <class C>
C inner_product_bounded(const SparsePoly<C>& p, const SparsePoly<C>& q,
                        const DegreeProfile& lambda) {
  if (p.arity() != q.arity() || p.arity() != lambda.arity())
    throw std::invalid_argument("inner_product_bounded: arity mismatch");
  C acc(0);
  for (const auto& [mu, c] : p.terms()) {
    C d = q.coefficient(mu);
    if (d == C(0)) continue;
    if (!lambda.covers(mu))
      throw std::invalid_argument(
          "inner_product_bounded: profile does not cover support");
    acc += c * d / detail::from_int<C>(multi_binomial(lambda, mu));
  }
  return acc;
}

// <p, q>^inf = sum_mu mu! p_mu q_mu.
template <class C>
C inner_product_trans(const SparsePoly<C>& p, const SparsePoly<C>& q) {
  if (p.arity() != q.arity())
    throw std::invalid_argument("inner_product_trans: arity mismatch");
  C acc(0);
  for (const auto& [mu, c] : p.terms()) {
    C d = q.coefficient(mu);
    if (d == C(0)) continue;
    acc += c * d * detail::from_int<C>(multi_factorial(mu));
  }
  return acc;
}

// Homogeneous pairing <p, q> = sum_mu p_mu q_mu / multinomial(d, mu) for
// degree-d homogeneous inputs.
template <class C>
C inner_product_multinomial(const SparsePoly<C>& p, const SparsePoly<C>& q) {
  if (p.arity() != q.arity())
    throw std::invalid_argument("inner_product_multinomial: arity mismatch");
  int dp = 0, dq = 0;
  if (!p.is_homogeneous(&dp) || !q.is_homogeneous(&dq) || dp != dq)
    throw std::invalid_argument(
        "inner_product_multinomial: homogeneous inputs of equal degree required");
  Int dfact = factorial(static_cast<unsigned>(dp));
  C acc(0);
  for (const auto& [mu, c] : p.terms()) {
    C d = q.coefficient(mu);
    if (d == C(0)) continue;
    // multinomial(dp, mu) = dp! / mu!
    C m = detail::from_int<C>(dfact) / detail::from_int<C>(multi_factorial(mu));
    acc += c * d / m;
  }
  return acc;
}

// Exact reproducing identity: T[p](x0) = <Symb(T)(z, x0), p(z)> in the
// pairing matching the operator's kind.  Slack is exactly zero when it holds.
inline BoundReport symbol_identity_check(const OperatorQ& t, const PolyQ& p,
                                         const std::vector<Rat>& x0) {
  if (static_cast<int>(x0.size()) != t.out_arity)
    throw std::invalid_argument("symbol_identity_check: x0 arity mismatch");

  PolyQ tp = capkit::apply(t, p);
  Rat lhs = tp.eval(x0);

  PolyQ symb = t.bounded() ? symbol_bounded(t)
                           : symbol_trans_truncated(t, t.trunc_order);
  if (!t.bounded()) {
    // truncation must cover the support of p for exactness
    if (p.max_total_degree() > t.trunc_order)
      throw std::invalid_argument(
          "symbol_identity_check: truncation order below deg p");
  }
  // substitute the x block at x0, leaving a polynomial in z
  PolyQ at_x0 = symb;
  for (int k = t.out_arity - 1; k >= 0; --k)
    at_x0 = substitute(at_x0, t.in_arity + k, x0[k]);

  Rat rhs = t.bounded() ? inner_product_bounded(at_x0, p, *t.profile)
                        : inner_product_trans(at_x0, p);

  BoundReport r;
  r.name = "symbol_identity";
  r.lhs = rat_to_double(lhs);
  r.rhs = rat_to_double(rhs);
  Rat slack = lhs - rhs;
  r.slack = rat_to_double(slack);
  r.tolerance = 0;
  r.status = slack == 0 ? ReportStatus::Holds : ReportStatus::Violated;
  if (slack != 0) r.detail = "exact slack " + rat_to_string(slack);
  return r;
}

// Exact equality <p, q>^lambda = <Pol p, Pol q>^(1,...,1).
inline BoundReport polarization_inner_product_check(const PolyQ& p,
                                                    const PolyQ& q,
                                                    const DegreeProfile& lambda) {
  Rat lhs = inner_product_bounded(p, q, lambda);
  PolyQ pp = polarize(p, lambda);
  PolyQ pq = polarize(q, lambda);
  DegreeProfile ones = DegreeProfile::uniform(lambda.total(), 1);
  Rat rhs = inner_product_bounded(pp, pq, ones);

  BoundReport r;
  r.name = "polarization_inner_product";
  r.lhs = rat_to_double(lhs);
  r.rhs = rat_to_double(rhs);
  Rat slack = lhs - rhs;
  r.slack = rat_to_double(slack);
  r.tolerance = 0;
  r.status = slack == 0 ? ReportStatus::Holds : ReportStatus::Violated;
  if (slack != 0) r.detail = "exact slack " + rat_to_string(slack);
  return r;
}

}  // namespace capkit
