#pragma once

#include <set>

#include <json.hpp>

#include "capkit/bipartite.hpp"
#include "capkit/matrix.hpp"
#include "capkit/poly_json.hpp"

namespace capkit {

// {"left": m, "right": n, "edges": [[i, j], ...]}
inline Json graph_to_json(const BipartiteGraph& g) {
  Json edges = Json::array();
  for (int i = 0; i < g.left; ++i)
    for (int j = 0; j < g.right; ++j)
      if (g.edge(i, j)) edges.push_back({i, j});
  return Json{{"left", g.left}, {"right", g.right}, {"edges", edges}};
}

inline BipartiteGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("left") || !j.contains("right") ||
      !j.contains("edges"))
    throw std::invalid_argument("graph JSON must have left, right, edges");
  BipartiteGraph g(j["left"].get<int>(), j["right"].get<int>());
  if (!j["edges"].is_array())
    throw std::invalid_argument("graph edges must be an array");
  std::set<std::pair<int, int>> seen;
  for (const Json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph edge must be a pair [i, j]");
    int i = e[0].get<int>(), k = e[1].get<int>();
    if (i < 0 || i >= g.left || k < 0 || k >= g.right)
      throw std::invalid_argument("graph edge endpoint out of range");
    if (!seen.emplace(i, k).second)
      throw std::invalid_argument("duplicate graph edge");
    g.set_edge(i, k, true);
  }
  return g;
}

// {"rows": m, "cols": n, "entries": [[...], ...]}; rational entries as
// "num/den" strings (plain integers also accepted), float as numbers.
inline Json matrix_to_json(const MatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline Json matrix_to_json(const MatD& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline MatQ matrix_rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw std::invalid_argument("matrix JSON must have rows, cols, entries");
  MatQ m(j["rows"].get<int>(), j["cols"].get<int>());
  const Json& rows = j["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != m.rows)
    throw std::invalid_argument("matrix entries must hold `rows` rows");
  for (int i = 0; i < m.rows; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != m.cols)
      throw std::invalid_argument("matrix row length != cols");
    for (int k = 0; k < m.cols; ++k) {
      const Json& v = row[k];
      if (v.is_string())
        m.at(i, k) = rat_parse(v.get<std::string>());
      else if (v.is_number_integer())
        m.at(i, k) = Rat(v.get<long long>());
      else if (v.is_number())
        m.at(i, k) = rat_from_double(v.get<double>());
      else
        throw std::invalid_argument("matrix entry must be a number or string");
    }
  }
  m.check_nonneg();
  return m;
}

}  // namespace capkit
