#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "capkit/newton_polytope.hpp"
#include "capkit/sparse_poly.hpp"

namespace capkit {

// Value, gradient and Hessian of y -> log p(e^y) at a point.  Computed with
// a max-shift so huge or tiny terms cannot overflow.
struct LogPartition {
  double value = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

LogPartition log_partition(const PolyD& p, const Eigen::VectorXd& y);

struct CapacityOptions {
  double grad_tol = 1e-10;
  int max_iter = 200;
};

// inf_{x>0} p(x) / x^alpha.  The region classifies alpha against the Newton
// polytope of p: Outside gives value 0; Boundary restricts p to the minimal
// face containing alpha and optimizes there; Interior optimizes directly.
struct CapacityResult {
  double value = 0;
  Region region = Region::Outside;
  std::vector<ExponentVec> face;  // Boundary: support of the minimal face
  std::vector<double> minimizer;  // log-domain argmin (empty when Outside)
  bool converged = false;
  int iterations = 0;
  double grad_norm = std::numeric_limits<double>::quiet_NaN();

  nlohmann::json to_json() const;
};

CapacityResult capacity(const PolyD& p, const std::vector<double>& alpha,
                        const CapacityOptions& opts = {});

inline double capacity_value(const PolyD& p, const std::vector<double>& alpha,
                             const CapacityOptions& opts = {}) {
  return capacity(p, alpha, opts).value;
}

// Closed form for p = (sum_k c_k x_k)^m at degree profile alpha with
// sum(alpha) = m: prod_k (m c_k / alpha_k)^{alpha_k}, using 0^0 = 1.
double capacity_linear_power(const std::vector<double>& c,
                             const std::vector<double>& alpha, double m);

// Capacity along the Bernstein-style truncation sequence
//   f_lambda(x / lambda) = sum_{mu <= lambda} C(lambda, mu) c(mu) x^mu / lambda^mu
// for each lambda in `lambdas` (profile lambda * ones(arity)).  Coefficients
// C(lambda,k)/lambda^k are accumulated by the stable ratio recurrence, never
// as a quotient of two huge numbers.
std::vector<CapacityResult> capacity_of_truncation_sequence(
    const std::function<double(const ExponentVec&)>& coef, int arity,
    const std::vector<double>& alpha, const std::vector<int>& lambdas,
    const CapacityOptions& opts = {});

}  // namespace capkit
