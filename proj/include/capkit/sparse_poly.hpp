#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "capkit/exponent.hpp"
#include "capkit/rational.hpp"

namespace capkit {

template <class C>
C coef_pow(const C& base, int e) {
  C acc(1);
  C b = base;
  int n = e;
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// Sparse polynomial with nonnegative coefficients of type C (Rat or double).
// Invariants: every stored key has length arity(), no stored coefficient is
// zero, and no coefficient is negative.  Term order is the map's lexicographic
// key order, which makes iteration (and hence serialization) deterministic.
template <class C>
class SparsePoly {
 public:
  using TermMap = std::map<ExponentVec, C>;

  explicit SparsePoly(int arity = 0) : arity_(arity) {
    if (arity < 0) throw std::invalid_argument("negative arity");
  }

  static SparsePoly constant(int arity, const C& v) {
    SparsePoly p(arity);
    p.add_term(ExponentVec(arity, 0), v);
    return p;
  }
  static SparsePoly monomial(ExponentVec mu, const C& v) {
    SparsePoly p(static_cast<int>(mu.size()));
    p.add_term(std::move(mu), v);
    return p;
  }
  static SparsePoly variable(int arity, int k) {
    ExponentVec mu(arity, 0);
    mu.at(k) = 1;
    return monomial(std::move(mu), C(1));
  }

  int arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Accumulates; negative results are rejected, exact zeros are dropped.
  void add_term(ExponentVec mu, const C& v) {
    if (static_cast<int>(mu.size()) != arity_)
      throw std::invalid_argument("term arity mismatch");
    for (int e : mu)
      if (e < 0) throw std::invalid_argument("negative exponent");
    if (v == C(0)) return;
    auto [it, inserted] = terms_.emplace(std::move(mu), v);
    if (!inserted) {
      // Negative deltas may cancel an existing term but never drive it
      // below zero; exact zero is erased so the invariant stays tight.
      C next = it->second + v;
      if (next < C(0)) {
        throw std::invalid_argument("negative coefficient");
      }
      if (next == C(0)) {
        terms_.erase(it);
      } else {
        it->second = std::move(next);
      }
    } else if (v < C(0)) {
      terms_.erase(it);
      throw std::invalid_argument("negative coefficient");
    }
  }

  C coefficient(const ExponentVec& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? C(0) : it->second;
  }

  C eval(const std::vector<C>& x) const {
    if (static_cast<int>(x.size()) != arity_)
      throw std::invalid_argument("eval: point arity mismatch");
    C acc(0);
    for (const auto& [mu, c] : terms_) {
      C t = c;
      for (int k = 0; k < arity_; ++k)
        if (mu[k] > 0) t *= coef_pow(x[k], mu[k]);
      acc += t;
    }
    return acc;
  }

  SparsePoly operator+(const SparsePoly& q) const {
    require_same_arity(q);
    SparsePoly r = *this;
    for (const auto& [mu, c] : q.terms_) r.add_term(mu, c);
    return r;
  }

  SparsePoly operator*(const SparsePoly& q) const {
    require_same_arity(q);
    SparsePoly r(arity_);
    for (const auto& [mu, c] : terms_)
      for (const auto& [nu, d] : q.terms_) r.add_term(add(mu, nu), c * d);
    return r;
  }

  SparsePoly scaled(const C& b) const {
    SparsePoly r(arity_);
    for (const auto& [mu, c] : terms_) r.add_term(mu, c * b);
    return r;
  }

  SparsePoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    SparsePoly acc = constant(arity_, C(1));
    SparsePoly b = *this;
    while (e > 0) {
      if (e & 1) acc = acc * b;
      if (e > 1) b = b * b;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const SparsePoly& q) const {
    return arity_ == q.arity_ && terms_ == q.terms_;
  }

  std::vector<ExponentVec> support() const {
    std::vector<ExponentVec> s;
    s.reserve(terms_.size());
    for (const auto& [mu, c] : terms_) s.push_back(mu);
    return s;
  }

  DegreeProfile degree_profile() const {
    std::vector<int> d(arity_, 0);
    for (const auto& [mu, c] : terms_)
      for (int k = 0; k < arity_; ++k) d[k] = std::max(d[k], mu[k]);
    return DegreeProfile(d);
  }

  int max_total_degree() const {
    int d = 0;
    for (const auto& [mu, c] : terms_) d = std::max(d, total_degree(mu));
    return d;
  }

  bool is_multiaffine() const {
    for (const auto& [mu, c] : terms_)
      for (int e : mu)
        if (e > 1) return false;
    return true;
  }

  // True when every term has the same total degree; that degree is returned
  // through `deg` (0 for the zero polynomial).
  bool is_homogeneous(int* deg = nullptr) const {
    int d = terms_.empty() ? 0 : total_degree(terms_.begin()->first);
    for (const auto& [mu, c] : terms_)
      if (total_degree(mu) != d) return false;
    if (deg) *deg = d;
    return true;
  }

 private:
  void require_same_arity(const SparsePoly& q) const {
    if (arity_ != q.arity_) throw std::invalid_argument("arity mismatch");
  }

  int arity_;
  TermMap terms_;
};

using PolyQ = SparsePoly<Rat>;
using PolyD = SparsePoly<double>;

inline PolyD to_float(const PolyQ& p) {
  PolyD r(p.arity());
  for (const auto& [mu, c] : p.terms()) r.add_term(mu, rat_to_double(c));
  return r;
}

// d/dx_k.
template <class C>
SparsePoly<C> partial_derivative(const SparsePoly<C>& p, int k) {
  if (k < 0 || k >= p.arity())
    throw std::invalid_argument("derivative: variable index out of range");
  SparsePoly<C> r(p.arity());
  for (const auto& [mu, c] : p.terms()) {
    if (mu[k] == 0) continue;
    ExponentVec nu = mu;
    --nu[k];
    r.add_term(std::move(nu), c * C(mu[k]));
  }
  return r;
}

// Iterated derivative d^mu/dx^mu (no normalization).
template <class C>
SparsePoly<C> partial_derivative(const SparsePoly<C>& p, const ExponentVec& mu) {
  SparsePoly<C> r = p;
  for (int k = 0; k < static_cast<int>(mu.size()); ++k)
    for (int j = 0; j < mu[k]; ++j) r = partial_derivative(r, k);
  return r;
}

// Fixes x_k = value; the result has arity one less, remaining variables keep
// their relative order.
template <class C>
SparsePoly<C> substitute(const SparsePoly<C>& p, int k, const C& value) {
  if (k < 0 || k >= p.arity())
    throw std::invalid_argument("substitute: variable index out of range");
  if (value < C(0)) throw std::invalid_argument("substitute: negative value");
  SparsePoly<C> r(p.arity() - 1);
  for (const auto& [mu, c] : p.terms()) {
    C coef = c;
    if (mu[k] > 0) {
      if (value == C(0)) continue;
      coef *= coef_pow(value, mu[k]);
    }
    ExponentVec nu;
    nu.reserve(mu.size() - 1);
    for (int j = 0; j < static_cast<int>(mu.size()); ++j)
      if (j != k) nu.push_back(mu[j]);
    r.add_term(std::move(nu), coef);
  }
  return r;
}

// p(x, x, ..., x) as a univariate polynomial.
template <class C>
SparsePoly<C> diagonalize(const SparsePoly<C>& p) {
  SparsePoly<C> r(1);
  for (const auto& [mu, c] : p.terms()) r.add_term({total_degree(mu)}, c);
  return r;
}

}  // namespace capkit
