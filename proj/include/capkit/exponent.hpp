#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "capkit/rational.hpp"

namespace capkit {

// Multi-index of nonnegative integers; the key type for sparse polynomials.
using ExponentVec = std::vector<int>;

inline int total_degree(const ExponentVec& mu) {
  return std::accumulate(mu.begin(), mu.end(), 0);
}

inline bool leq(const ExponentVec& mu, const ExponentVec& nu) {
  if (mu.size() != nu.size()) return false;
  for (size_t k = 0; k < mu.size(); ++k)
    if (mu[k] > nu[k]) return false;
  return true;
}

inline ExponentVec sub(const ExponentVec& mu, const ExponentVec& nu) {
  ExponentVec r(mu.size());
  for (size_t k = 0; k < mu.size(); ++k) r[k] = mu[k] - nu[k];
  return r;
}

inline ExponentVec add(const ExponentVec& mu, const ExponentVec& nu) {
  ExponentVec r(mu.size());
  for (size_t k = 0; k < mu.size(); ++k) r[k] = mu[k] + nu[k];
  return r;
}

inline std::string exponent_to_string(const ExponentVec& mu) {
  std::string s = "(";
  for (size_t k = 0; k < mu.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(mu[k]);
  }
  return s + ")";
}

// Per-variable degree cap for bounded-degree spaces and operators.
struct DegreeProfile {
  std::vector<int> bounds;

  DegreeProfile() = default;
  explicit DegreeProfile(std::vector<int> b) : bounds(std::move(b)) {
    for (int v : bounds)
      if (v < 0) throw std::invalid_argument("degree profile entry < 0");
  }
  static DegreeProfile uniform(int arity, int bound) {
    return DegreeProfile(std::vector<int>(arity, bound));
  }

  int arity() const { return static_cast<int>(bounds.size()); }
  int total() const { return std::accumulate(bounds.begin(), bounds.end(), 0); }
  bool covers(const ExponentVec& mu) const {
    if (mu.size() != bounds.size()) return false;
    for (size_t k = 0; k < mu.size(); ++k)
      if (mu[k] > bounds[k]) return false;
    return true;
  }
};

// prod_k C(lambda_k, mu_k); zero when mu exceeds the profile.
inline Int multi_binomial(const DegreeProfile& lambda, const ExponentVec& mu) {
  if (mu.size() != lambda.bounds.size())
    throw std::invalid_argument("multi_binomial: arity mismatch");
  Int b = 1;
  for (size_t k = 0; k < mu.size(); ++k) b *= binomial(lambda.bounds[k], mu[k]);
  return b;
}

inline Int multi_factorial(const ExponentVec& mu) {
  Int f = 1;
  for (int m : mu) f *= factorial(static_cast<unsigned>(m));
  return f;
}

// Iterates mu over the box 0 <= mu <= lambda in lexicographic order.
// Returns false when the iteration wraps back to zero.
inline bool next_in_box(ExponentVec& mu, const DegreeProfile& lambda) {
  for (int k = static_cast<int>(mu.size()) - 1; k >= 0; --k) {
    if (mu[k] < lambda.bounds[k]) {
      ++mu[k];
      return true;
    }
    mu[k] = 0;
  }
  return false;
}

// Iterates mu over { mu >= 0 : |mu| <= cap } in lexicographic order.
inline bool next_by_total_degree(ExponentVec& mu, int cap) {
  int d = total_degree(mu);
  int n = static_cast<int>(mu.size());
  for (int k = n - 1; k >= 0; --k) {
    if (d < cap) {
      ++mu[k];
      return true;
    }
    d -= mu[k];
    mu[k] = 0;
  }
  return false;
}

}  // namespace capkit
