#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "capkit/sparse_poly.hpp"
#include "capkit/transforms.hpp"

namespace capkit {

// Linear operator given extensionally by its action on monomials.  Bounded
// operators carry the degree profile of their domain; unbounded ones tabulate
// images for all |mu| <= trunc_order.
template <class C>
struct LinearOperator {
  int in_arity = 0;
  int out_arity = 0;
  std::optional<DegreeProfile> profile;
  int trunc_order = 0;
  std::map<ExponentVec, SparsePoly<C>> action;

  bool bounded() const { return profile.has_value(); }

  void set_image(ExponentVec mu, SparsePoly<C> image) {
    if (static_cast<int>(mu.size()) != in_arity)
      throw std::invalid_argument("operator image: exponent arity mismatch");
    if (image.arity() != out_arity)
      throw std::invalid_argument("operator image: image arity mismatch");
    action.insert_or_assign(std::move(mu), std::move(image));
  }

  const SparsePoly<C>& image(const ExponentVec& mu) const {
    auto it = action.find(mu);
    if (it == action.end())
      throw std::invalid_argument("operator not defined at monomial " +
                                  exponent_to_string(mu));
    return it->second;
  }
};

using OperatorQ = LinearOperator<Rat>;
using OperatorD = LinearOperator<double>;

inline OperatorD to_float(const OperatorQ& t) {
  OperatorD r;
  r.in_arity = t.in_arity;
  r.out_arity = t.out_arity;
  r.profile = t.profile;
  r.trunc_order = t.trunc_order;
  for (const auto& [mu, img] : t.action) r.action.emplace(mu, to_float(img));
  return r;
}

template <class C>
SparsePoly<C> apply(const LinearOperator<C>& t, const SparsePoly<C>& p) {
  if (p.arity() != t.in_arity)
    throw std::invalid_argument("apply: polynomial arity mismatch");
  SparsePoly<C> out(t.out_arity);
  for (const auto& [mu, c] : p.terms()) {
    if (t.bounded() && !t.profile->covers(mu))
      throw std::invalid_argument("apply: monomial outside operator profile");
    const SparsePoly<C>& img = t.image(mu);
    for (const auto& [nu, d] : img.terms()) out.add_term(nu, c * d);
  }
  return out;
}

namespace detail {

template <class C>
C from_int(const Int& v) {
  if constexpr (std::is_same_v<C, Rat>)
    return Rat(v);
  else
    return v.convert_to<double>();
}

}  // namespace detail

// Symbol of a bounded operator: sum over 0 <= mu <= lambda of
// C(lambda, mu) z^mu T(x^mu), a polynomial in (z_1..z_n, x_1..x_m).
template <class C>
SparsePoly<C> symbol_bounded(const LinearOperator<C>& t) {
  if (!t.bounded())
    throw std::invalid_argument("symbol_bounded: operator is unbounded");
  const int n = t.in_arity, m = t.out_arity;
  SparsePoly<C> s(n + m);
  ExponentVec mu(n, 0);
  do {
    C w = detail::from_int<C>(multi_binomial(*t.profile, mu));
    const SparsePoly<C>& img = t.image(mu);
    for (const auto& [nu, d] : img.terms()) {
      ExponentVec full(n + m);
      for (int k = 0; k < n; ++k) full[k] = mu[k];
      for (int k = 0; k < m; ++k) full[n + k] = nu[k];
      s.add_term(std::move(full), w * d);
    }
  } while (next_in_box(mu, *t.profile));
  return s;
}

// Truncated exponential symbol: sum over |mu| <= order of
// z^mu / mu! T(x^mu).  The operator must tabulate at least that far.
template <class C>
SparsePoly<C> symbol_trans_truncated(const LinearOperator<C>& t, int order) {
  if (t.bounded())
    throw std::invalid_argument("symbol_trans_truncated: operator is bounded");
  if (order > t.trunc_order)
    throw std::invalid_argument("symbol_trans_truncated: order exceeds table");
  const int n = t.in_arity, m = t.out_arity;
  SparsePoly<C> s(n + m);
  ExponentVec mu(n, 0);
  do {
    C w = C(1) / detail::from_int<C>(multi_factorial(mu));
    const SparsePoly<C>& img = t.image(mu);
    for (const auto& [nu, d] : img.terms()) {
      ExponentVec full(n + m);
      for (int k = 0; k < n; ++k) full[k] = mu[k];
      for (int k = 0; k < m; ++k) full[n + k] = nu[k];
      s.add_term(std::move(full), w * d);
    }
  } while (next_by_total_degree(mu, order));
  return s;
}

// ---- canonical operator constructors ----

template <class C>
LinearOperator<C> identity_op(const DegreeProfile& lambda) {
  LinearOperator<C> t;
  t.in_arity = t.out_arity = lambda.arity();
  t.profile = lambda;
  ExponentVec mu(lambda.arity(), 0);
  do {
    t.set_image(mu, SparsePoly<C>::monomial(mu, C(1)));
  } while (next_in_box(mu, lambda));
  return t;
}

// p -> (d/dx_k p) evaluated at x_k = 0; the variable is removed from the
// output ring, remaining variables keep their relative order.
template <class C>
LinearOperator<C> derivative_at_zero_op(const DegreeProfile& lambda, int k) {
  if (k < 0 || k >= lambda.arity())
    throw std::invalid_argument("derivative_at_zero_op: bad variable index");
  LinearOperator<C> t;
  t.in_arity = lambda.arity();
  t.out_arity = lambda.arity() - 1;
  t.profile = lambda;
  ExponentVec mu(lambda.arity(), 0);
  do {
    if (mu[k] == 1) {
      ExponentVec nu;
      for (int j = 0; j < t.in_arity; ++j)
        if (j != k) nu.push_back(mu[j]);
      t.set_image(mu, SparsePoly<C>::monomial(std::move(nu), C(1)));
    } else {
      t.set_image(mu, SparsePoly<C>(t.out_arity));  // zero
    }
  } while (next_in_box(mu, lambda));
  return t;
}

// p -> p(point), as an arity-0 polynomial.
template <class C>
LinearOperator<C> evaluation_op(const DegreeProfile& lambda,
                                const std::vector<C>& point) {
  if (static_cast<int>(point.size()) != lambda.arity())
    throw std::invalid_argument("evaluation_op: point arity mismatch");
  LinearOperator<C> t;
  t.in_arity = lambda.arity();
  t.out_arity = 0;
  t.profile = lambda;
  ExponentVec mu(lambda.arity(), 0);
  do {
    C v(1);
    for (int j = 0; j < t.in_arity; ++j)
      if (mu[j] > 0) v *= coef_pow(point[j], mu[j]);
    SparsePoly<C> img(0);
    img.add_term({}, v);
    t.set_image(mu, std::move(img));
  } while (next_in_box(mu, lambda));
  return t;
}

// Unbounded evaluation operator tabulated for |mu| <= order.
template <class C>
LinearOperator<C> evaluation_op_unbounded(int arity,
                                          const std::vector<C>& point,
                                          int order) {
  if (static_cast<int>(point.size()) != arity)
    throw std::invalid_argument("evaluation_op_unbounded: point arity mismatch");
  LinearOperator<C> t;
  t.in_arity = arity;
  t.out_arity = 0;
  t.trunc_order = order;
  ExponentVec mu(arity, 0);
  do {
    C v(1);
    for (int j = 0; j < arity; ++j)
      if (mu[j] > 0) v *= coef_pow(point[j], mu[j]);
    SparsePoly<C> img(0);
    img.add_term({}, v);
    t.set_image(mu, std::move(img));
  } while (next_by_total_degree(mu, order));
  return t;
}

template <class C>
LinearOperator<C> constant_term_op(const DegreeProfile& lambda) {
  LinearOperator<C> t;
  t.in_arity = lambda.arity();
  t.out_arity = 0;
  t.profile = lambda;
  ExponentVec mu(lambda.arity(), 0);
  do {
    SparsePoly<C> img(0);
    if (total_degree(mu) == 0) img.add_term({}, C(1));
    t.set_image(mu, std::move(img));
  } while (next_in_box(mu, lambda));
  return t;
}

// T_k = sum over k-subsets S of d^S followed by evaluation at all-ones:
// x^mu -> e_k(mu), a constant.  For the uniform profile (b,...,b) its
// symbol is b^k sum_S z^S (1+z)^{lambda-S}, which collapses on the diagonal
// to b^k C(n,k) z^k (1+z)^{nb-k}.
template <class C>
LinearOperator<C> matching_operator(const DegreeProfile& lambda, int k) {
  LinearOperator<C> t;
  const int n = lambda.arity();
  t.in_arity = n;
  t.out_arity = 0;
  t.profile = lambda;
  ExponentVec mu(n, 0);
  do {
    // e_k(mu) by the standard elementary-symmetric DP over variables.
    std::vector<C> e(k + 1, C(0));
    e[0] = C(1);
    for (int j = 0; j < n; ++j)
      for (int i = std::min(k, j + 1); i >= 1; --i)
        e[i] += e[i - 1] * C(mu[j]);
    SparsePoly<C> img(0);
    img.add_term({}, e[k]);
    t.set_image(mu, std::move(img));
  } while (next_in_box(mu, lambda));
  return t;
}

// (p boxplus^lambda q)(x) = (1/lambda!) sum_{0 <= mu <= lambda}
//   (d^mu p)(x) * (d^(lambda-mu) q)(0)
// with (d^nu q)(0) = nu! q_nu. The 1/lambda! normalization makes the lift's
// symbol exactly (z + w + zwx)^lambda; without it every identity and
// capacity bound downstream would carry a spurious lambda! factor.
template <class C>
SparsePoly<C> boxplus(const SparsePoly<C>& p, const SparsePoly<C>& q,
                      const DegreeProfile& lambda) {
  if (p.arity() != q.arity() || p.arity() != lambda.arity())
    throw std::invalid_argument("boxplus: arity mismatch");
  for (const auto& [mu, c] : p.terms())
    if (!lambda.covers(mu))
      throw std::invalid_argument("boxplus: profile does not cover p");
  for (const auto& [mu, c] : q.terms())
    if (!lambda.covers(mu))
      throw std::invalid_argument("boxplus: profile does not cover q");

  const C norm =
      detail::from_int<C>(multi_factorial(ExponentVec(lambda.bounds)));
  SparsePoly<C> out(p.arity());
  ExponentVec mu(p.arity(), 0);
  do {
    ExponentVec rest = sub(ExponentVec(lambda.bounds), mu);
    C qc = q.coefficient(rest);
    if (qc == C(0)) continue;
    C w = detail::from_int<C>(multi_factorial(rest)) * qc / norm;
    SparsePoly<C> dp = partial_derivative(p, mu);
    for (const auto& [nu, d] : dp.terms()) out.add_term(nu, d * w);
  } while (next_in_box(mu, lambda));
  return out;
}

// Bilinear lift of boxplus as an operator on the doubled ring:
// z^mu w^nu -> x^mu boxplus^lambda x^nu, profile (lambda, lambda).
template <class C>
LinearOperator<C> boxplus_lift_op(const DegreeProfile& lambda) {
  const int n = lambda.arity();
  LinearOperator<C> t;
  t.in_arity = 2 * n;
  t.out_arity = n;
  std::vector<int> dbl = lambda.bounds;
  dbl.insert(dbl.end(), lambda.bounds.begin(), lambda.bounds.end());
  t.profile = DegreeProfile(dbl);
  ExponentVec mn(2 * n, 0);
  do {
    ExponentVec mu(mn.begin(), mn.begin() + n);
    ExponentVec nu(mn.begin() + n, mn.end());
    t.set_image(mn, boxplus(SparsePoly<C>::monomial(mu, C(1)),
                            SparsePoly<C>::monomial(nu, C(1)), lambda));
  } while (next_in_box(mn, *t.profile));
  return t;
}

}  // namespace capkit
