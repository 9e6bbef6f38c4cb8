#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "capkit/bound_report.hpp"
#include "capkit/sparse_poly.hpp"

namespace capkit {

// Dense signed univariate polynomial, coefficient of x^k at index k.
// Unlike SparsePoly these may carry negative coefficients; they arise as
// restrictions p(a + t b) along lines with arbitrary base point.
template <class C>
using DenseUni = std::vector<C>;

template <class C>
void dense_trim(DenseUni<C>& p) {
  while (!p.empty() && p.back() == C(0)) p.pop_back();
}

template <class C>
DenseUni<C> dense_derivative(const DenseUni<C>& p) {
  DenseUni<C> d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * C(static_cast<int>(k)));
  dense_trim(d);
  return d;
}

template <class C>
DenseUni<C> dense_mul(const DenseUni<C>& p, const DenseUni<C>& q) {
  if (p.empty() || q.empty()) return {};
  DenseUni<C> r(p.size() + q.size() - 1, C(0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  dense_trim(r);
  return r;
}

// Coefficients of t -> p(a + t b).
template <class C>
DenseUni<C> restrict_to_line(const SparsePoly<C>& p, const std::vector<C>& a,
                             const std::vector<C>& b) {
  const int n = p.arity();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("restrict_to_line: arity mismatch");
  DenseUni<C> acc;
  for (const auto& [mu, c] : p.terms()) {
    DenseUni<C> term{c};
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < mu[k]; ++j) term = dense_mul(term, DenseUni<C>{a[k], b[k]});
    if (term.size() > acc.size()) acc.resize(term.size(), C(0));
    for (size_t j = 0; j < term.size(); ++j) acc[j] += term[j];
  }
  dense_trim(acc);
  return acc;
}

// Exact route: squarefree reduction plus a Sturm chain.  The zero polynomial
// and constants count as real rooted (no roots to violate the condition).
bool dense_real_rooted_exact(DenseUni<Rat> p);

// Floating route: companion-matrix eigenvalues; a root is accepted as real
// when |Im| <= tol (1 + |Re|).  Verdicts within a factor of 10 of the
// threshold are re-decided by the exact route (doubles convert losslessly).
bool dense_real_rooted(const DenseUni<double>& p, double tol = 1e-8);

// Univariate wrappers; the input must have arity one.
bool is_real_rooted(const PolyQ& p);
bool is_real_rooted(const PolyD& p, double tol = 1e-8);

// Outcome of random-line testing for real stability.  `stable` means no
// falsifying line was found in `trials` attempts; a falsification carries
// the line and the offending restriction.
struct StabilityVerdict {
  bool stable = true;
  int trials = 0;
  bool falsified = false;
  std::vector<double> line_a;
  std::vector<double> line_b;
  std::vector<double> restriction;

  nlohmann::json to_json() const {
    nlohmann::json j{{"stable", stable},
                     {"trials", trials},
                     {"falsified", falsified}};
    if (falsified) {
      j["line_a"] = line_a;
      j["line_b"] = line_b;
      j["restriction"] = restriction;
    }
    return j;
  }
};

// Restricts p to random lines a + t b with a in [-3,3]^n, b in (0.1,3]^n and
// checks each restriction for real-rootedness.  Determined by `seed`.
StabilityVerdict probabilistic_stability_test(const PolyD& p, int trials,
                                              std::uint64_t seed);
StabilityVerdict probabilistic_stability_test(const PolyQ& p, int trials,
                                              std::uint64_t seed);

// Pointwise check of (d_i p)(d_j p) >= p (d_i d_j p) over all pairs i < j at
// each given point.  Requires a multiaffine polynomial; reports the worst
// slack and where it occurred.
BoundReport strong_rayleigh_check(const PolyD& p,
                                  const std::vector<std::vector<double>>& points,
                                  double tol = 1e-9);

}  // namespace capkit
