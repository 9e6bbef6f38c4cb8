#include <doctest.h>

#include <cmath>
#include <random>

#include "capkit/capacity.hpp"
#include "capkit/combin_bounds.hpp"
#include "capkit/matrix.hpp"
#include "capkit/random_instances.hpp"
#include "oracle.hpp"

using namespace capkit;

namespace {

PolyD linear_power(const std::vector<double>& c, int m) {
  PolyD base(static_cast<int>(c.size()));
  for (size_t k = 0; k < c.size(); ++k)
    base.add_term(
        [&] {
          ExponentVec mu(c.size(), 0);
          mu[k] = 1;
          return mu;
        }(),
        c[k]);
  return base.pow(m);
}

}  // namespace

TEST_CASE("closed form for powers of linear forms") {
  CHECK(capacity_linear_power({1, 1}, {1, 1}, 2) == doctest::Approx(4).epsilon(1e-12));
  CHECK(capacity_linear_power({1}, {1}, 1) == doctest::Approx(1).epsilon(1e-12));
  // a zero alpha entry contributes a factor one (0^0 = 1); alpha on a vertex
  // of the simplex picks out the pure-power coefficient
  CHECK(capacity_linear_power({1, 1}, {2, 0}, 2) == doctest::Approx(1).epsilon(1e-12));
  CHECK(capacity_linear_power({2, 3}, {1, 1}, 2) ==
        doctest::Approx(24).epsilon(1e-12));
  CHECK_THROWS_AS(capacity_linear_power({1, 1}, {1, 2}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_linear_power({-1, 1}, {1, 1}, 2),
                  std::invalid_argument);
}

TEST_CASE("capacity of (x1+x2)^2 at (1,1)") {
  PolyD p = linear_power({1, 1}, 2);
  CapacityResult r = capacity(p, {1, 1});
  CHECK(r.region == Region::Interior);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(4).epsilon(1e-10));
  CHECK(oracle::grid_capacity(p, {1, 1}) == doctest::Approx(4).epsilon(1e-7));
}

TEST_CASE("optimizer matches the closed form on random linear powers") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ndist(1, 4), mdist(1, 6);
  std::uniform_real_distribution<double> cdist(0.3, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    int n = ndist(rng), m = mdist(rng);
    std::vector<double> c(n);
    for (auto& v : c) v = cdist(rng);
    // interior alpha: positive simplex point scaled to total m
    std::vector<double> alpha(n);
    double s = 0;
    for (auto& a : alpha) {
      a = 0.1 + cdist(rng);
      s += a;
    }
    for (auto& a : alpha) a *= m / s;

    double closed = capacity_linear_power(c, alpha, m);
    CapacityResult r = capacity(linear_power(c, m), alpha);
    REQUIRE(r.converged);
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-8));
  }
}

TEST_CASE("optimizer matches the slow grid oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 1 + trial % 3;
    std::mt19937_64 sub(substream(99, trial));
    PolyD p = random_affine_product(n, 2 + trial % 3, sub);
    std::vector<double> alpha = random_interior_alpha(n, p.max_total_degree(), sub);
    CapacityResult r = capacity(p, alpha);
    REQUIRE(r.converged);
    double slow = oracle::grid_capacity(p, alpha);
    CHECK(r.value == doctest::Approx(slow).epsilon(2e-6));
  }
}

TEST_CASE("boundary alpha restricts to the minimal face") {
  PolyD p(1);
  p.add_term({0}, 1);
  p.add_term({1}, 2);
  p.add_term({2}, 1);
  CapacityResult r = capacity(p, {2});
  CHECK(r.region == Region::Boundary);
  REQUIRE(r.face.size() == 1);
  CHECK(r.face[0] == ExponentVec{2});
  // the face polynomial is the single monomial x^2 with coefficient 1
  CHECK(r.value == doctest::Approx(1).epsilon(1e-12));

  // alpha on an edge of a 2d support
  PolyD q(2);
  q.add_term({0, 0}, 1);
  q.add_term({2, 0}, 3);
  q.add_term({0, 2}, 1);
  CapacityResult e = capacity(q, {1, 0});
  CHECK(e.region == Region::Boundary);
  // face {(0,0),(2,0)}: capacity of 1 + 3x^2 at alpha=1
  double expect = oracle::grid_capacity(
      [] {
        PolyD f(1);
        f.add_term({0}, 1);
        f.add_term({2}, 3);
        return f;
      }(),
      {1});
  CHECK(e.value == doctest::Approx(expect).epsilon(1e-6));
  CHECK(e.value == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-8));
}

TEST_CASE("alpha outside the Newton polytope gives zero") {
  PolyD p(1);
  p.add_term({0}, 1);
  p.add_term({2}, 1);
  CapacityResult r = capacity(p, {3});
  CHECK(r.region == Region::Outside);
  CHECK(r.value == 0);
}

TEST_CASE("degenerate arities") {
  PolyD c = PolyD::constant(0, 5.5);
  CapacityResult r = capacity(c, {});
  CHECK(r.value == doctest::Approx(5.5));
  CHECK(r.converged);
  PolyD zero(1);
  CHECK_THROWS_AS(capacity(zero, {1}), std::invalid_argument);
  PolyD p = PolyD::constant(1, 1);
  CHECK_THROWS_AS(capacity(p, {1, 2}), std::invalid_argument);
}

TEST_CASE("capacity of a scaled binomial power approaches e from below") {
  auto ones = [](const ExponentVec&) { return 1.0; };
  std::vector<int> lambdas{2, 4, 8, 16, 64, 256, 512};
  auto results = capacity_of_truncation_sequence(ones, 1, {1}, lambdas);
  REQUIRE(results.size() == lambdas.size());
  double prev = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    REQUIRE(results[i].converged);
    double expect = std::pow(double(lambdas[i]) / (lambdas[i] - 1),
                             lambdas[i] - 1);
    CHECK(results[i].value == doctest::Approx(expect).epsilon(1e-8));
    CHECK(results[i].value > prev);
    prev = results[i].value;
  }
  CHECK(std::exp(1.0) - results.back().value > 0);
  CHECK(std::exp(1.0) - results.back().value < 3e-3);
}

TEST_CASE("doubly stochastic product polynomials have capacity one") {
  MatD half = MatD::constant(2, 2, 0.5);
  BoundReport r = doubly_stochastic_capacity_check(half);
  CHECK(r.status == ReportStatus::Holds);
  CHECK(r.lhs == doctest::Approx(1).epsilon(1e-9));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    MatD m = sinkhorn(random_positive_matrix(3 + t % 3, rng));
    BoundReport s = doubly_stochastic_capacity_check(m);
    CHECK(s.status == ReportStatus::Holds);
    CHECK(s.lhs == doctest::Approx(1).epsilon(1e-6));
  }
}

TEST_CASE("disjoint products multiply capacities") {
  std::mt19937_64 rng(5);
  PolyD p = random_affine_product(2, 2, rng);
  PolyD q = random_affine_product(1, 3, rng);
  std::vector<double> a = random_interior_alpha(2, p.max_total_degree(), rng);
  std::vector<double> b = random_interior_alpha(1, q.max_total_degree(), rng);

  PolyD joint(3);
  for (const auto& [mu, cp] : p.terms())
    for (const auto& [nu, cq] : q.terms())
      joint.add_term({mu[0], mu[1], nu[0]}, cp * cq);

  double lhs = capacity_value(joint, {a[0], a[1], b[0]});
  double rhs = capacity_value(p, a) * capacity_value(q, b);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
}
