#pragma once

#include <cstdint>
#include <optional>

#include "capkit/capacity.hpp"
#include "capkit/inner_product.hpp"
#include "capkit/linear_operator.hpp"
#include "capkit/stability.hpp"

namespace capkit {

// prod_k alpha_k^{alpha_k} (lambda_k - alpha_k)^{lambda_k - alpha_k} /
//        lambda_k^{lambda_k},  with 0^0 = 1.
double bounded_symbol_factor(const std::vector<double>& alpha,
                             const DegreeProfile& lambda);

// prod_k e^{-alpha_k} alpha_k^{alpha_k}, the lambda -> inf limit of the
// bounded factor.
double trans_symbol_factor(const std::vector<double>& alpha);

struct PreservationBound {
  double factor = 0;          // capacity-free prefactor
  CapacityResult symbol_cap;  // capacity of the symbol at (alpha, beta)
  double bound = 0;           // factor * symbol_cap.value
};

// Lower bound on cpc_beta(T p) / cpc_alpha(p) from the symbol of T:
// bounded operators use the binomial symbol and the bounded factor,
// unbounded ones the truncated exponential symbol and the trans factor.
PreservationBound preservation_bound_bounded(const OperatorD& t,
                                             const std::vector<double>& alpha,
                                             const std::vector<double>& beta,
                                             const CapacityOptions& opts = {});
PreservationBound preservation_bound_trans(const OperatorD& t, int order,
                                           const std::vector<double>& alpha,
                                           const std::vector<double>& beta,
                                           const CapacityOptions& opts = {});

struct VerifyOptions {
  double tol = 1e-7;
  CapacityOptions capacity;
  int stability_trials = 200;
  std::uint64_t stability_seed = 1;
  bool override_stability = false;  // admit inputs that fail the line test
};

// Thrown when an input polynomial fails the stability admission test and no
// override was requested.
struct StabilityRejection : std::invalid_argument {
  explicit StabilityRejection(StabilityVerdict v)
      : std::invalid_argument("input failed the stability line test"),
        verdict(std::move(v)) {}
  StabilityVerdict verdict;
};

// Checks cpc_beta(T p) >= bound(T, alpha, beta) * cpc_alpha(p).
// Trivial when cpc_alpha(p) is zero or the symbol capacity vanishes.
BoundReport verify_preservation(const OperatorD& t, const PolyD& p,
                                const std::vector<double>& alpha,
                                const std::vector<double>& beta,
                                const VerifyOptions& opts = {});

// Checks <p, q>^lambda >= prod factor * cpc_alpha(p) * cpc_{lambda-alpha}(q)
// (bounded pairing), or
// <p, q>^inf >= prod e^{-a} a^a * cpc_alpha(p) * cpc_alpha(q) (trans pairing,
// lambda absent).
BoundReport verify_inner_product_bound(const PolyD& p, const PolyD& q,
                                       const std::optional<DegreeProfile>& lambda,
                                       const std::vector<double>& alpha,
                                       const VerifyOptions& opts = {});

// Checks alpha^alpha cpc_alpha(p boxplus q) >=
//   lambda^-lambda (beta^beta cpc_beta(p)) (gamma^gamma cpc_gamma(q))
// at alpha = beta + gamma - lambda.
BoundReport boxplus_corollary_check(const PolyD& p, const PolyD& q,
                                    const DegreeProfile& lambda,
                                    const std::vector<double>& beta,
                                    const std::vector<double>& gamma,
                                    const VerifyOptions& opts = {});

// Probe of the homogeneous-pairing conjecture:
// <p, q>_multinomial >= (alpha^alpha / d^d) cpc_alpha(p) cpc_alpha(q)
// for degree-d homogeneous stable p, q with sum(alpha) = d.
BoundReport gurvits_conjecture_probe(const PolyD& p, const PolyD& q,
                                     const std::vector<double>& alpha,
                                     const VerifyOptions& opts = {});

}  // namespace capkit
