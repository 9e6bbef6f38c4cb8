#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "capkit/sparse_poly.hpp"

namespace capkit {

// p_mu x^mu -> p_mu x^mu y^(lambda - mu); output variables are ordered
// (x_1..x_n, y_1..y_n).  Requires lambda to cover the degree profile of p.
template <class C>
SparsePoly<C> homogenize(const SparsePoly<C>& p, const DegreeProfile& lambda) {
  if (lambda.arity() != p.arity())
    throw std::invalid_argument("homogenize: profile arity mismatch");
  const int n = p.arity();
  SparsePoly<C> r(2 * n);
  for (const auto& [mu, c] : p.terms()) {
    if (!lambda.covers(mu))
      throw std::invalid_argument("homogenize: profile does not cover support");
    ExponentVec nu(2 * n);
    for (int k = 0; k < n; ++k) {
      nu[k] = mu[k];
      nu[n + k] = lambda.bounds[k] - mu[k];
    }
    r.add_term(std::move(nu), c);
  }
  return r;
}

// p_mu x^mu -> p_mu x^(lambda - mu).
template <class C>
SparsePoly<C> invert(const SparsePoly<C>& p, const DegreeProfile& lambda) {
  if (lambda.arity() != p.arity())
    throw std::invalid_argument("invert: profile arity mismatch");
  SparsePoly<C> r(p.arity());
  for (const auto& [mu, c] : p.terms()) {
    if (!lambda.covers(mu))
      throw std::invalid_argument("invert: profile does not cover support");
    r.add_term(sub(ExponentVec(lambda.bounds), mu), c);
  }
  return r;
}

// Elementary symmetric polynomial e_j in the block of variables
// [offset, offset + width) of an arity-N polynomial ring.
template <class C>
SparsePoly<C> elementary_symmetric(int total_arity, int offset, int width,
                                   int j) {
  SparsePoly<C> r(total_arity);
  if (j < 0 || j > width) return r;  // zero
  std::vector<int> pick(j);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    ExponentVec mu(total_arity, 0);
    for (int idx : pick) mu[offset + idx] = 1;
    r.add_term(std::move(mu), C(1));
    // next j-subset of {0..width-1} in lexicographic order
    int i = j - 1;
    while (i >= 0 && pick[i] == width - j + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < j; ++t) pick[t] = pick[t - 1] + 1;
  }
  return r;
}

// Multiaffine polarization: x_k^j is replaced by
// e_j(block k) / C(lambda_k, j), blocks laid out consecutively with
// block k holding lambda_k variables.  The result is multiaffine, symmetric
// within each block, and restricts back to p on the block diagonal.
template <class C>
SparsePoly<C> polarize(const SparsePoly<C>& p, const DegreeProfile& lambda) {
  if (lambda.arity() != p.arity())
    throw std::invalid_argument("polarize: profile arity mismatch");
  const int n = p.arity();
  const int N = lambda.total();
  std::vector<int> offset(n, 0);
  for (int k = 1; k < n; ++k) offset[k] = offset[k - 1] + lambda.bounds[k - 1];

  SparsePoly<C> r(N);
  for (const auto& [mu, c] : p.terms()) {
    if (!lambda.covers(mu))
      throw std::invalid_argument("polarize: profile does not cover support");
    SparsePoly<C> term = SparsePoly<C>::constant(N, c);
    for (int k = 0; k < n; ++k) {
      if (mu[k] == 0) continue;
      C denom;
      if constexpr (std::is_same_v<C, Rat>)
        denom = Rat(binomial(lambda.bounds[k], mu[k]));
      else
        denom = C(binomial(lambda.bounds[k], mu[k]).template convert_to<double>());
      term = term * elementary_symmetric<C>(N, offset[k], lambda.bounds[k],
                                            mu[k])
                        .scaled(C(1) / denom);
    }
    for (const auto& [nu, d] : term.terms()) r.add_term(nu, d);
  }
  return r;
}

// Symmetrization S(p) = (1/n!) sum_sigma p(x_sigma(1), ..., x_sigma(n)).
template <class C>
SparsePoly<C> symmetrize(const SparsePoly<C>& p) {
  const int n = p.arity();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  C inv_fact;
  if constexpr (std::is_same_v<C, Rat>)
    inv_fact = Rat(1) / Rat(factorial(static_cast<unsigned>(n)));
  else
    inv_fact =
        1.0 / factorial(static_cast<unsigned>(n)).template convert_to<double>();

  SparsePoly<C> r(n);
  do {
    for (const auto& [mu, c] : p.terms()) {
      ExponentVec nu(n);
      for (int k = 0; k < n; ++k) nu[perm[k]] = mu[k];
      r.add_term(std::move(nu), c * inv_fact);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

template <class C>
bool is_symmetric(const SparsePoly<C>& p) {
  // Coefficient invariance under adjacent transpositions, which generate
  // the full symmetric group.  Comparing against symmetrize(p) would round
  // for floating C (the 1/n! average) and misjudge exact inputs.
  const int n = p.arity();
  for (int k = 0; k + 1 < n; ++k) {
    for (const auto& [mu, c] : p.terms()) {
      ExponentVec nu = mu;
      std::swap(nu[k], nu[k + 1]);
      if (p.coefficient(nu) != c) return false;
    }
  }
  return true;
}

// Pol^lambda(alpha): alpha_k spread uniformly over block k.
inline std::vector<double> polarize_point(const std::vector<double>& alpha,
                                          const DegreeProfile& lambda) {
  if (static_cast<int>(alpha.size()) != lambda.arity())
    throw std::invalid_argument("polarize_point: arity mismatch");
  std::vector<double> out;
  out.reserve(lambda.total());
  for (size_t k = 0; k < alpha.size(); ++k)
    for (int j = 0; j < lambda.bounds[k]; ++j)
      out.push_back(alpha[k] / lambda.bounds[k]);
  return out;
}

}  // namespace capkit
