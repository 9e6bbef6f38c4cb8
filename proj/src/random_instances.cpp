#include "capkit/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace capkit {

PolyD random_affine_product(int arity, int factors, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  PolyD p = PolyD::constant(arity, 1.0);
  for (int f = 0; f < factors; ++f) {
    PolyD form = PolyD::constant(arity, coef(rng));
    for (int k = 0; k < arity; ++k) {
      ExponentVec mu(arity, 0);
      mu[k] = 1;
      form.add_term(std::move(mu), coef(rng));
    }
    p = p * form;
  }
  return p;
}

PolyD random_multiaffine_stable(int arity, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  std::vector<int> vars(arity);
  std::iota(vars.begin(), vars.end(), 0);
  std::shuffle(vars.begin(), vars.end(), rng);

  PolyD p = PolyD::constant(arity, 1.0);
  size_t pos = 0;
  std::uniform_int_distribution<int> width_dist(1, std::max(1, arity / 2));
  while (pos < vars.size()) {
    size_t width = std::min<size_t>(width_dist(rng), vars.size() - pos);
    PolyD form = PolyD::constant(arity, coef(rng));
    for (size_t t = 0; t < width; ++t) {
      ExponentVec mu(arity, 0);
      mu[vars[pos + t]] = 1;
      form.add_term(std::move(mu), coef(rng));
    }
    p = p * form;
    pos += width;
  }
  return p;
}

std::vector<double> random_interior_alpha(int arity, double budget,
                                          std::mt19937_64& rng) {
  // Dirichlet(1,...,1,1) over (alpha, remainder), scaled by the budget and
  // mixed toward the barycenter to stay clear of the faces.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> g(arity + 1);
  double sum = 0;
  for (auto& v : g) {
    v = expo(rng) + 1e-3;
    sum += v;
  }
  std::vector<double> alpha(arity);
  double center = budget / (arity + 1);
  for (int k = 0; k < arity; ++k) {
    double raw = budget * g[k] / sum;
    alpha[k] = 0.8 * raw + 0.2 * center;
  }
  return alpha;
}

MatD random_positive_matrix(int n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  MatD m(n, n);
  for (auto& v : m.data) v = dist(rng);
  return m;
}

namespace {

// Degree-preserving 2-swaps keeping the graph simple.
void mix_by_swaps(BipartiteGraph& g, int attempts, std::mt19937_64& rng) {
  if (g.left < 2 || g.right < 2) return;
  std::uniform_int_distribution<int> li(0, g.left - 1);
  std::uniform_int_distribution<int> ri(0, g.right - 1);
  for (int t = 0; t < attempts; ++t) {
    int i1 = li(rng), i2 = li(rng);
    int j1 = ri(rng), j2 = ri(rng);
    if (i1 == i2 || j1 == j2) continue;
    if (g.edge(i1, j1) && g.edge(i2, j2) && !g.edge(i1, j2) &&
        !g.edge(i2, j1)) {
      g.set_edge(i1, j1, false);
      g.set_edge(i2, j2, false);
      g.set_edge(i1, j2, true);
      g.set_edge(i2, j1, true);
    }
  }
}

}  // namespace

BipartiteGraph random_regular_bipartite(int n, int d, std::mt19937_64& rng) {
  if (d < 1 || d > n)
    throw std::invalid_argument("random_regular_bipartite: need 1 <= d <= n");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> shifts(n);
  std::iota(shifts.begin(), shifts.end(), 0);
  std::shuffle(shifts.begin(), shifts.end(), rng);
  shifts.resize(d);

  BipartiteGraph g(n, n);
  for (int i = 0; i < n; ++i)
    for (int s : shifts) g.set_edge(i, perm[(i + s) % n], true);
  mix_by_swaps(g, 8 * n * d, rng);
  return g;
}

BipartiteGraph random_biregular(int m, int n, int a, int b,
                                std::mt19937_64& rng) {
  if (m < 1 || n < 1 || a < 1 || b < 1)
    throw std::invalid_argument("random_biregular: positive parameters required");
  if (m * a != n * b)
    throw std::invalid_argument("random_biregular: ma != nb");
  if (a > n || b > m)
    throw std::invalid_argument("random_biregular: degree exceeds side size");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  // Consecutive arcs tile the columns evenly: concatenating the arcs gives
  // the interval [0, m a) which wraps Z_n exactly b times.
  BipartiteGraph g(m, n);
  for (int i = 0; i < m; ++i)
    for (int t = 0; t < a; ++t)
      g.set_edge(i, perm[(i * a + t) % n], true);
  mix_by_swaps(g, 8 * m * a, rng);
  return g;
}

}  // namespace capkit
