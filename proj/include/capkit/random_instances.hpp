#pragma once

#include <cstdint>
#include <random>

#include "capkit/bipartite.hpp"
#include "capkit/matrix.hpp"
#include "capkit/sparse_poly.hpp"

namespace capkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream seed for trial `index` of a run seeded with `seed`; keeps trials
// decoupled so inserting one does not shift the others.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return seed ^ splitmix64(index + 1);
}

// Product of `factors` affine forms c_0 + sum_k c_k x_k with coefficients in
// [0.2, 2]; real stable with Newton polytope {a >= 0 : sum a <= factors}.
PolyD random_affine_product(int arity, int factors, std::mt19937_64& rng);

// Product over a random partition of the variables into blocks of affine
// forms, one factor per block: multiaffine and real stable.
PolyD random_multiaffine_stable(int arity, std::mt19937_64& rng);

// Random point of the open simplex {a > 0 : sum a < budget}, bounded away
// from the boundary so capacity queries stay well inside.
std::vector<double> random_interior_alpha(int arity, double budget,
                                          std::mt19937_64& rng);

// Entrywise uniform in [lo, hi].
MatD random_positive_matrix(int n, std::mt19937_64& rng, double lo = 0.2,
                            double hi = 2.0);

// d-regular bipartite graph on n + n vertices: a random permutation composed
// with d distinct cyclic shifts (always simple), then degree-preserving edge
// swaps for extra mixing.
BipartiteGraph random_regular_bipartite(int n, int d, std::mt19937_64& rng);

// (a, b)-biregular graph on m + n vertices (requires m a = n b, a <= n,
// b <= m): consecutive arcs under a random column permutation, then swaps.
BipartiteGraph random_biregular(int m, int n, int a, int b,
                                std::mt19937_64& rng);

}  // namespace capkit
