#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "capkit/matrix.hpp"

namespace capkit {

// Simple bipartite graph on left x right vertices, stored as a 0/1
// biadjacency table.
struct BipartiteGraph {
  int left = 0, right = 0;
  std::vector<std::uint8_t> adj;  // left x right

  BipartiteGraph() = default;
  BipartiteGraph(int l, int r) : left(l), right(r), adj(l * r, 0) {
    if (l < 0 || r < 0) throw std::invalid_argument("negative side size");
  }
  static BipartiteGraph complete(int l, int r) {
    BipartiteGraph g(l, r);
    for (auto& e : g.adj) e = 1;
    return g;
  }

  bool edge(int i, int j) const { return adj[i * right + j] != 0; }
  void set_edge(int i, int j, bool on) { adj[i * right + j] = on ? 1 : 0; }

  int left_degree(int i) const {
    int d = 0;
    for (int j = 0; j < right; ++j) d += edge(i, j);
    return d;
  }
  int right_degree(int j) const {
    int d = 0;
    for (int i = 0; i < left; ++i) d += edge(i, j);
    return d;
  }

  // (a, b) when every left degree is a and every right degree is b; the
  // handshake identity left*a == right*b then holds automatically.
  std::optional<std::pair<int, int>> biregular() const {
    if (left == 0 || right == 0) return std::nullopt;
    int a = left_degree(0), b = right_degree(0);
    for (int i = 0; i < left; ++i)
      if (left_degree(i) != a) return std::nullopt;
    for (int j = 0; j < right; ++j)
      if (right_degree(j) != b) return std::nullopt;
    return std::make_pair(a, b);
  }

  MatQ biadjacency_rational() const {
    MatQ m(left, right);
    for (int i = 0; i < left; ++i)
      for (int j = 0; j < right; ++j) m.at(i, j) = edge(i, j) ? 1 : 0;
    return m;
  }
  MatD biadjacency_float() const {
    MatD m(left, right);
    for (int i = 0; i < left; ++i)
      for (int j = 0; j < right; ++j) m.at(i, j) = edge(i, j) ? 1.0 : 0.0;
    return m;
  }
};

// Number of k-edge matchings, counted exactly by branching on left vertices
// (match to an unused neighbor or skip).  Guarded to left + right <= 20.
Int count_matchings(const BipartiteGraph& g, int k);

// mu_0 .. mu_min(left, right).
std::vector<Int> all_matching_counts(const BipartiteGraph& g);

}  // namespace capkit
