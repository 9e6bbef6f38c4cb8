#pragma once

#include <vector>

#include "capkit/rational.hpp"

namespace capkit {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;  // row major, rectangular

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVec x;       // primal optimum (Optimal)
  Rat objective;  // c.x at the optimum
  // Infeasible only: y with y.A <= 0 componentwise and y.b > 0, i.e. an exact
  // certificate that {x >= 0 : Ax = b} is empty.
  RatVec farkas;
};

// Maximizes c.x over { x >= 0 : A x = b }.  Exact rational two-phase simplex
// with Bland's rule; redundant rows are dropped in phase one.  Intended for
// the small dense systems arising from Newton polytope queries.
LpResult simplex_max(const RatMat& A, const RatVec& b, const RatVec& c);

}  // namespace capkit
