#include <doctest.h>

#include <random>

#include "capkit/inner_product.hpp"
#include "capkit/preservation.hpp"
#include "capkit/random_instances.hpp"
#include "capkit/transforms.hpp"

using namespace capkit;

namespace {

PolyQ one_plus_x() {
  PolyQ p(1);
  p.add_term({0}, 1);
  p.add_term({1}, 1);
  return p;
}

PolyQ random_box_poly(std::mt19937_64& rng, const DegreeProfile& lam) {
  std::uniform_int_distribution<int> num(0, 5), den(1, 4);
  PolyQ p(lam.arity());
  ExponentVec mu(lam.arity(), 0);
  do {
    int v = num(rng);
    if (v > 0) p.add_term(mu, Rat(v, den(rng)));
  } while (next_in_box(mu, lam));
  if (p.is_zero()) p.add_term(ExponentVec(lam.arity(), 0), 1);
  return p;
}

PolyD affine_square(double a, double b, double c, double d) {
  // (a x1 + b)(c x2 + d)
  PolyD p(2);
  p.add_term({1, 1}, a * c);
  p.add_term({1, 0}, a * d);
  p.add_term({0, 1}, b * c);
  p.add_term({0, 0}, b * d);
  return p;
}

}  // namespace

TEST_CASE("pairing values by hand") {
  DegreeProfile one{{1}};
  CHECK(inner_product_bounded(one_plus_x(), one_plus_x(), one) == 2);

  PolyQ sq = one_plus_x().pow(2);
  DegreeProfile two{{2}};
  // 1*1 + (1/2)*2*2 + 1*1
  CHECK(inner_product_bounded(sq, sq, two) == 4);

  CHECK(inner_product_trans(one_plus_x(), one_plus_x()) == 2);
  PolyQ x2 = PolyQ::monomial({2}, 1);
  CHECK(inner_product_trans(x2, x2) == 2);

  PolyQ x1x2 = PolyQ::monomial({1, 1}, 1);
  CHECK(inner_product_multinomial(x1x2, x1x2) == Rat(1, 2));

  PolyQ h(2);  // x^2 + x y
  h.add_term({2, 0}, 1);
  h.add_term({1, 1}, 1);
  CHECK(inner_product_multinomial(h, h) == Rat(3, 2));  // 1/1 + 1/2

  CHECK_THROWS_AS(inner_product_multinomial(one_plus_x(), one_plus_x()),
                  std::invalid_argument);
  PolyQ big(1);
  big.add_term({3}, 1);
  CHECK_THROWS_AS(inner_product_bounded(big, big, two), std::invalid_argument);
}

TEST_CASE("pairings are symmetric and bilinear") {
  std::mt19937_64 rng(8);
  DegreeProfile lam{{2, 2}};
  for (int t = 0; t < 6; ++t) {
    PolyQ p = random_box_poly(rng, lam);
    PolyQ q = random_box_poly(rng, lam);
    PolyQ r = random_box_poly(rng, lam);
    CHECK(inner_product_bounded(p, q, lam) == inner_product_bounded(q, p, lam));
    CHECK(inner_product_bounded(p + r, q, lam) ==
          inner_product_bounded(p, q, lam) + inner_product_bounded(r, q, lam));
    CHECK(inner_product_trans(p, q) == inner_product_trans(q, p));
  }
}

TEST_CASE("polarization preserves the pairing exactly") {
  std::mt19937_64 rng(21);
  DegreeProfile lam{{2, 1}};
  for (int t = 0; t < 10; ++t) {
    PolyQ p = random_box_poly(rng, lam);
    PolyQ q = random_box_poly(rng, lam);
    BoundReport r = polarization_inner_product_check(p, q, lam);
    CHECK(r.status == ReportStatus::Holds);
    CHECK(r.slack == 0);
  }
}

TEST_CASE("equality case of the pairing bound") {
  PolyD p(1);
  p.add_term({0}, 1);
  p.add_term({1}, 1);
  VerifyOptions opts;
  BoundReport r = verify_inner_product_bound(p, p, DegreeProfile{{1}}, {0.5},
                                             opts);
  REQUIRE(r.status == ReportStatus::Holds);
  CHECK(r.lhs == doctest::Approx(2).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(2).epsilon(1e-9));
}

TEST_CASE("pairing bound on random products of affine forms") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> coef(0.2, 2.0), au(0.15, 0.85);
  VerifyOptions opts;
  int held = 0;
  for (int t = 0; t < 20; ++t) {
    PolyD p = affine_square(coef(rng), coef(rng), coef(rng), coef(rng));
    PolyD q = affine_square(coef(rng), coef(rng), coef(rng), coef(rng));
    std::vector<double> alpha{au(rng), au(rng)};
    BoundReport r =
        verify_inner_product_bound(p, q, DegreeProfile{{1, 1}}, alpha, opts);
    REQUIRE(r.status != ReportStatus::Violated);
    if (r.status == ReportStatus::Holds) ++held;
  }
  CHECK(held == 20);
}

TEST_CASE("transcendental pairing bound") {
  std::mt19937_64 rng(34);
  VerifyOptions opts;
  for (int t = 0; t < 8; ++t) {
    std::mt19937_64 sub(substream(34, t));
    PolyD p = random_affine_product(2, 2, sub);
    PolyD q = random_affine_product(2, 2, sub);
    std::vector<double> alpha = random_interior_alpha(2, 1.6, sub);
    BoundReport r =
        verify_inner_product_bound(p, q, std::nullopt, alpha, opts);
    CHECK(r.status == ReportStatus::Holds);
  }
}

TEST_CASE("unstable inputs are rejected unless overridden") {
  PolyD bad(2);
  bad.add_term({0, 0}, 1);
  bad.add_term({1, 1}, 1);
  VerifyOptions opts;
  CHECK_THROWS_AS(
      verify_inner_product_bound(bad, bad, DegreeProfile{{1, 1}}, {0.5, 0.5},
                                 opts),
      StabilityRejection);
  opts.override_stability = true;
  BoundReport r = verify_inner_product_bound(bad, bad, DegreeProfile{{1, 1}},
                                             {0.5, 0.5}, opts);
  CHECK(r.name == "inner_product_bound");
}

TEST_CASE("homogeneous pairing probe on product instances") {
  PolyD p(2);
  p.add_term({1, 1}, 1.0);  // x1 x2
  VerifyOptions opts;
  BoundReport r = gurvits_conjecture_probe(p, p, {1.0, 1.0}, opts);
  CHECK(r.status != ReportStatus::Violated);

  PolyD e2(3);
  e2.add_term({1, 1, 0}, 1);
  e2.add_term({1, 0, 1}, 1);
  e2.add_term({0, 1, 1}, 1);
  std::vector<double> alpha{2.0 / 3, 2.0 / 3, 2.0 / 3};
  BoundReport s = gurvits_conjecture_probe(e2, e2, alpha, opts);
  CHECK(s.status != ReportStatus::Violated);

  PolyD inhom(1);
  inhom.add_term({0}, 1);
  inhom.add_term({1}, 1);
  CHECK_THROWS_AS(gurvits_conjecture_probe(inhom, inhom, {1.0}, opts),
                  std::invalid_argument);
}
