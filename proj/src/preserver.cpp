#include "capkit/preserver.hpp"

#include <cmath>
#include <stdexcept>

namespace capkit {

const char* preserver_name(PreserverId id) {
  switch (id) {
    case PreserverId::Scaling: return "scaling";
    case PreserverId::Product: return "product";
    case PreserverId::DisjointProduct: return "disjoint_product";
    case PreserverId::Evaluation: return "evaluation";
    case PreserverId::ExternalField: return "external_field";
    case PreserverId::Inversion: return "inversion";
    case PreserverId::Concavity: return "concavity";
    case PreserverId::Diagonalization: return "diagonalization";
    case PreserverId::SymmetricDiagonalization:
      return "symmetric_diagonalization";
    case PreserverId::Homogenization: return "homogenization";
    case PreserverId::Polarization: return "polarization";
  }
  return "?";
}

std::vector<PreserverId> all_preserver_ids() {
  return {PreserverId::Scaling,
          PreserverId::Product,
          PreserverId::DisjointProduct,
          PreserverId::Evaluation,
          PreserverId::ExternalField,
          PreserverId::Inversion,
          PreserverId::Concavity,
          PreserverId::Diagonalization,
          PreserverId::SymmetricDiagonalization,
          PreserverId::Homogenization,
          PreserverId::Polarization};
}

namespace {

// Tensor product p(x) q(z) on the concatenated variable set.
PolyD disjoint_product(const PolyD& p, const PolyD& q) {
  PolyD r(p.arity() + q.arity());
  for (const auto& [mu, cp] : p.terms())
    for (const auto& [nu, cq] : q.terms()) {
      ExponentVec full = mu;
      full.insert(full.end(), nu.begin(), nu.end());
      r.add_term(std::move(full), cp * cq);
    }
  return r;
}

PolyD external_field(const PolyD& p, const std::vector<double>& c) {
  PolyD r(p.arity());
  for (const auto& [mu, v] : p.terms()) {
    double f = v;
    for (int k = 0; k < p.arity(); ++k)
      if (mu[k] > 0) f *= std::pow(c[k], mu[k]);
    r.add_term(mu, f);
  }
  return r;
}

double vec_power(const std::vector<double>& base,
                 const std::vector<double>& expo) {
  double s = 0;
  for (size_t k = 0; k < base.size(); ++k) {
    if (expo[k] == 0) continue;
    s += expo[k] * std::log(base[k]);
  }
  return std::exp(s);
}

std::vector<double> concat(const std::vector<double>& a,
                           const std::vector<double>& b) {
  std::vector<double> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

BoundReport check_preserver_identity(PreserverId id,
                                     const PreserverInstance& inst, double tol,
                                     const CapacityOptions& opts) {
  const std::string name = preserver_name(id);
  auto trivial = [&](const char* why) {
    return make_trivial_report(name, why);
  };
  auto cap = [&](const PolyD& p, const std::vector<double>& a) {
    return capacity(p, a, opts);
  };

  switch (id) {
    case PreserverId::Scaling: {
      if (inst.b <= 0) throw std::invalid_argument("scaling: b <= 0");
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      double lhs = cap(inst.p.scaled(inst.b), inst.alpha).value;
      return make_identity_report(name, lhs, inst.b * base.value, tol);
    }

    case PreserverId::Product: {
      CapacityResult bp = cap(inst.p, inst.alpha);
      CapacityResult bq = cap(inst.q, inst.beta);
      if (bp.region == Region::Outside || bq.region == Region::Outside)
        return trivial("a factor sits outside its Newton polytope");
      std::vector<double> sum(inst.alpha.size());
      for (size_t k = 0; k < sum.size(); ++k)
        sum[k] = inst.alpha[k] + inst.beta[k];
      double lhs = cap(inst.p * inst.q, sum).value;
      return make_inequality_report(name, lhs, bp.value * bq.value, tol);
    }

    case PreserverId::DisjointProduct: {
      CapacityResult bp = cap(inst.p, inst.alpha);
      CapacityResult bq = cap(inst.q, inst.beta);
      if (bp.region == Region::Outside || bq.region == Region::Outside)
        return trivial("a factor sits outside its Newton polytope");
      double lhs = cap(disjoint_product(inst.p, inst.q),
                       concat(inst.alpha, inst.beta))
                       .value;
      return make_identity_report(name, lhs, bp.value * bq.value, tol);
    }

    case PreserverId::Evaluation: {
      if (inst.y <= 0) throw std::invalid_argument("evaluation: y <= 0");
      const int n = inst.p.arity();
      if (n < 1) throw std::invalid_argument("evaluation: arity 0");
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      PolyD sub = substitute(inst.p, n - 1, inst.y);
      std::vector<double> rest(inst.alpha.begin(), inst.alpha.end() - 1);
      double lhs = cap(sub, rest).value;
      double rhs = std::pow(inst.y, inst.alpha[n - 1]) * base.value;
      return make_inequality_report(name, lhs, rhs, tol);
    }

    case PreserverId::ExternalField: {
      for (double v : inst.field)
        if (v <= 0) throw std::invalid_argument("external_field: c <= 0");
      if (inst.field.size() != static_cast<size_t>(inst.p.arity()))
        throw std::invalid_argument("external_field: arity mismatch");
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      double lhs = cap(external_field(inst.p, inst.field), inst.alpha).value;
      double rhs = vec_power(inst.field, inst.alpha) * base.value;
      return make_identity_report(name, lhs, rhs, tol);
    }

    case PreserverId::Inversion: {
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      std::vector<double> rest(inst.alpha.size());
      for (size_t k = 0; k < rest.size(); ++k)
        rest[k] = inst.lambda.bounds[k] - inst.alpha[k];
      double lhs = cap(invert(inst.p, inst.lambda), rest).value;
      return make_identity_report(name, lhs, base.value, tol);
    }

    case PreserverId::Concavity: {
      if (inst.b < 0 || inst.c < 0)
        throw std::invalid_argument("concavity: negative weight");
      CapacityResult bp = cap(inst.p, inst.alpha);
      CapacityResult bq = cap(inst.q, inst.alpha);
      if (bp.region == Region::Outside || bq.region == Region::Outside)
        return trivial("a summand sits outside its Newton polytope");
      PolyD mix = inst.p.scaled(inst.b) + inst.q.scaled(inst.c);
      double lhs = cap(mix, inst.alpha).value;
      double rhs = inst.b * bp.value + inst.c * bq.value;
      return make_inequality_report(name, lhs, rhs, tol);
    }

    case PreserverId::Diagonalization: {
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      double total = 0;
      for (double a : inst.alpha) total += a;
      double lhs = cap(diagonalize(inst.p), {total}).value;
      return make_inequality_report(name, lhs, base.value, tol);
    }

    case PreserverId::SymmetricDiagonalization: {
      if (!is_symmetric(inst.p))
        throw std::invalid_argument(
            "symmetric_diagonalization: symmetric input required");
      for (double a : inst.alpha)
        if (std::fabs(a - inst.alpha[0]) > 1e-12)
          throw std::invalid_argument(
              "symmetric_diagonalization: uniform alpha required");
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      double total = 0;
      for (double a : inst.alpha) total += a;
      double lhs = cap(diagonalize(inst.p), {total}).value;
      return make_identity_report(name, lhs, base.value, tol);
    }

    case PreserverId::Homogenization: {
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      // The lifted support satisfies mu_k + nu_k = lambda_k exactly, while
      // lambda_k - alpha_k rounds; capacity()'s affine-hull snap restores
      // the lifted direction onto that hull before membership.
      std::vector<double> rest(inst.alpha.size());
      for (size_t k = 0; k < rest.size(); ++k)
        rest[k] = inst.lambda.bounds[k] - inst.alpha[k];
      double lhs =
          cap(homogenize(inst.p, inst.lambda), concat(inst.alpha, rest)).value;
      return make_identity_report(name, lhs, base.value, tol);
    }

    case PreserverId::Polarization: {
      CapacityResult base = cap(inst.p, inst.alpha);
      if (base.region == Region::Outside) return trivial("alpha outside");
      double lhs = cap(polarize(inst.p, inst.lambda),
                       polarize_point(inst.alpha, inst.lambda))
                       .value;
      return make_identity_report(name, lhs, base.value, tol);
    }
  }
  throw std::logic_error("unknown preserver id");
}

}  // namespace capkit
