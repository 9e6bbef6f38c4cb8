#pragma once

#include <vector>

#include "capkit/bound_report.hpp"
#include "capkit/capacity.hpp"
#include "capkit/transforms.hpp"

namespace capkit {

// The basic capacity-preserving (or capacity-bounding) operations, checked
// numerically on concrete instances.  Equalities hold with equality; the
// entries marked >= below are one-sided bounds.
enum class PreserverId {
  Scaling,                   // cpc_a(b p) = b cpc_a(p)
  Product,                   // cpc_{a+b}(p q) >= cpc_a(p) cpc_b(q)
  DisjointProduct,           // cpc_{(a,b)}(p(x) q(z)) = cpc_a(p) cpc_b(q)
  Evaluation,                // cpc_{a'}(p(x', y)) >= y^{a_n} cpc_a(p)
  ExternalField,             // cpc_a(p(c o x)) = c^a cpc_a(p)
  Inversion,                 // cpc_{l-a}(inv_l p) = cpc_a(p)
  Concavity,                 // cpc_a(b p + c q) >= b cpc_a(p) + c cpc_a(q)
  Diagonalization,           // cpc_{|a|}(p(x,..,x)) >= cpc_a(p)
  SymmetricDiagonalization,  // equality in the line above for symmetric p,
                             // uniform a
  Homogenization,            // cpc_{(a, l-a)}(hmg_l p) = cpc_a(p)
  Polarization,              // cpc_{Pol(a)}(Pol p) = cpc_a(p)
};

const char* preserver_name(PreserverId id);
std::vector<PreserverId> all_preserver_ids();

struct PreserverInstance {
  PolyD p;
  PolyD q;                    // Product, DisjointProduct, Concavity
  std::vector<double> alpha;  // degree vector for p
  std::vector<double> beta;   // degree vector for q where one is needed
  double b = 1;               // Scaling / Concavity weight
  double c = 1;               // Concavity weight
  std::vector<double> field;  // ExternalField multipliers (> 0)
  double y = 1;               // Evaluation value (> 0)
  DegreeProfile lambda;       // Inversion / Homogenization / Polarization
};

// Evaluates both sides of the identity on the instance.  Returns Trivial
// when a participating capacity sits outside its Newton polytope (value 0),
// since the statement degenerates there.
BoundReport check_preserver_identity(PreserverId id,
                                     const PreserverInstance& inst, double tol,
                                     const CapacityOptions& opts = {});

}  // namespace capkit
