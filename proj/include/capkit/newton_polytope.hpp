#pragma once

#include <vector>

#include "capkit/simplex.hpp"
#include "capkit/sparse_poly.hpp"

namespace capkit {

// Position of a point relative to the Newton polytope (convex hull of the
// support).  Interior means relative interior, so the verdict reflects the
// hull's affine dimension: a single support point is Interior at itself.
enum class Region { Interior, Boundary, Outside };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Outside: return "outside";
  }
  return "?";
}

struct MembershipResult {
  Region region = Region::Outside;
  // Boundary: support points of the minimal face containing the query,
  // in lexicographic order.
  std::vector<ExponentVec> face;
  // Outside: exact separator with separator.alpha >= separator.mu + margin
  // for every support point mu, margin > 0.
  RatVec separator;
  Rat margin;
};

// Exact membership query; the LP sees only the support, never coefficients.
MembershipResult newton_membership(const std::vector<ExponentVec>& support,
                                   const RatVec& alpha);

// Exact Euclidean projection of alpha onto the affine hull of the support.
// Returns alpha unchanged when the hull is full-dimensional.  Queries built
// from doubles land a few ulps off any affine relation the support satisfies
// (homogeneous supports live in sum(mu) = deg, for instance); projecting
// first lets exact membership see the intended point.
RatVec affine_hull_project(const std::vector<ExponentVec>& support,
                           const RatVec& alpha);

template <class C>
MembershipResult newton_membership(const SparsePoly<C>& p,
                                   const RatVec& alpha) {
  if (p.is_zero())
    throw std::invalid_argument("newton_membership: zero polynomial");
  return newton_membership(p.support(), alpha);
}

template <class C>
MembershipResult newton_membership(const SparsePoly<C>& p,
                                   const std::vector<double>& alpha) {
  RatVec a;
  a.reserve(alpha.size());
  for (double v : alpha) a.push_back(rat_from_double(v));
  return newton_membership(p, a);
}

}  // namespace capkit
