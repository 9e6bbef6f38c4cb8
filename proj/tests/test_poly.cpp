#include <doctest.h>

#include <sstream>

#include "capkit/exponent.hpp"
#include "capkit/poly_json.hpp"
#include "capkit/rational.hpp"
#include "capkit/sparse_poly.hpp"
#include "capkit/transforms.hpp"

using namespace capkit;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_parse("3/4") == Rat(3, 4));
  CHECK(rat_parse("-7") == Rat(-7));
  CHECK(rat_parse("0") == Rat(0));
  CHECK(rat_to_string(Rat(6, 4)) == "3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
}

TEST_CASE("doubles convert to rationals exactly") {
  // 0.1 is not 1/10 in binary; the conversion must preserve the double bit
  // pattern, not the decimal literal.
  Rat r = rat_from_double(0.1);
  CHECK(rat_to_double(r) == 0.1);
  CHECK(r != Rat(1, 10));
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-3.0) == Rat(-3));
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("degree profile boxes and iteration") {
  DegreeProfile lam = DegreeProfile::uniform(3, 2);
  CHECK(lam.arity() == 3);
  CHECK(lam.total() == 6);
  CHECK(lam.covers({1, 2, 0}));
  CHECK_FALSE(lam.covers({3, 0, 0}));

  int count = 0;
  ExponentVec mu(3, 0);
  do {
    ++count;
  } while (next_in_box(mu, lam));
  CHECK(count == 27);  // (2+1)^3

  count = 0;
  mu.assign(2, 0);
  do {
    ++count;
  } while (next_by_total_degree(mu, 3));
  CHECK(count == 10);  // C(3+2, 2)
}

TEST_CASE("multi index helpers") {
  DegreeProfile lam{{3, 2}};
  CHECK(multi_binomial(lam, {2, 1}) == 6);
  CHECK(multi_binomial(lam, {0, 0}) == 1);
  CHECK(multi_factorial({3, 2}) == 12);
  CHECK(total_degree({1, 4, 2}) == 7);
  CHECK(leq({1, 2}, {1, 3}));
  CHECK_FALSE(leq({2, 0}, {1, 3}));
}

TEST_CASE("sparse polynomial invariants") {
  PolyQ p(2);
  p.add_term({1, 0}, Rat(2));
  p.add_term({1, 0}, Rat(3));
  CHECK(p.coefficient({1, 0}) == Rat(5));
  p.add_term({1, 0}, Rat(-5));  // cancellation back to zero is allowed
  CHECK(p.is_zero());

  CHECK_THROWS_AS(p.add_term({0, 0}, Rat(-1)), std::invalid_argument);
  CHECK_THROWS_AS(p.add_term({0}, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(p.add_term({-1, 0}, Rat(1)), std::invalid_argument);
}

TEST_CASE("arithmetic and evaluation are exact") {
  // (1 + 2x + y)(x + y)
  PolyQ a(2);
  a.add_term({0, 0}, 1);
  a.add_term({1, 0}, 2);
  a.add_term({0, 1}, 1);
  PolyQ b(2);
  b.add_term({1, 0}, 1);
  b.add_term({0, 1}, 1);
  PolyQ c = a * b;
  CHECK(c.coefficient({2, 0}) == 2);
  CHECK(c.coefficient({1, 1}) == 3);
  CHECK(c.coefficient({0, 2}) == 1);
  CHECK(c.coefficient({1, 0}) == 1);
  CHECK(c.coefficient({0, 1}) == 1);

  std::vector<Rat> x{Rat(1, 3), Rat(2)};
  CHECK(c.eval(x) == a.eval(x) * b.eval(x));

  PolyQ one = PolyQ::constant(2, 1);
  CHECK((a * one) == a);
  CHECK((a + PolyQ(2)) == a);

  PolyQ p = PolyQ::variable(1, 0) + PolyQ::constant(1, 1);
  PolyQ p4 = p.pow(4);
  CHECK(p4.coefficient({2}) == 6);
  CHECK(p4.max_total_degree() == 4);
}

TEST_CASE("structure predicates") {
  PolyQ p(2);
  p.add_term({1, 1}, 1);
  p.add_term({1, 0}, 2);
  CHECK(p.is_multiaffine());
  int d = -1;
  CHECK_FALSE(p.is_homogeneous(&d));
  PolyQ h(2);
  h.add_term({2, 0}, 1);
  h.add_term({1, 1}, 3);
  CHECK(h.is_homogeneous(&d));
  CHECK(d == 2);
  CHECK_FALSE(h.is_multiaffine());
  DegreeProfile prof = p.degree_profile();
  CHECK(prof.bounds == std::vector<int>{1, 1});
}

TEST_CASE("derivatives, substitution, diagonal restriction") {
  // p = (1+x)(1+y)
  PolyQ p(2);
  p.add_term({0, 0}, 1);
  p.add_term({1, 0}, 1);
  p.add_term({0, 1}, 1);
  p.add_term({1, 1}, 1);

  PolyQ px = partial_derivative(p, 0);
  CHECK(px.arity() == 2);
  CHECK(px.coefficient({0, 0}) == 1);
  CHECK(px.coefficient({0, 1}) == 1);

  PolyQ pxy = partial_derivative(p, ExponentVec{1, 1});
  CHECK(pxy == PolyQ::constant(2, 1));

  PolyQ at2 = substitute(p, 1, Rat(2));
  CHECK(at2.arity() == 1);
  CHECK(at2.coefficient({0}) == 3);
  CHECK(at2.coefficient({1}) == 3);
  CHECK_THROWS_AS(substitute(p, 1, Rat(-1)), std::invalid_argument);

  PolyQ diag = diagonalize(p);
  CHECK(diag.arity() == 1);
  CHECK(diag.coefficient({0}) == 1);
  CHECK(diag.coefficient({1}) == 2);
  CHECK(diag.coefficient({2}) == 1);
}

TEST_CASE("homogenization pairs each variable with a slack copy") {
  PolyQ p(1);
  p.add_term({0}, 1);
  p.add_term({1}, 2);
  DegreeProfile lam{{2}};
  PolyQ h = homogenize(p, lam);
  CHECK(h.arity() == 2);
  // x^0 y^2 + 2 x^1 y^1
  CHECK(h.coefficient({0, 2}) == 1);
  CHECK(h.coefficient({1, 1}) == 2);
  // setting the slack block to one restores p
  PolyQ back = substitute(h, 1, Rat(1));
  CHECK(back == p);
  CHECK_THROWS_AS(homogenize(p, DegreeProfile{{0}}), std::invalid_argument);
}

TEST_CASE("inversion reflects the support and is an involution") {
  PolyQ p(2);
  p.add_term({0, 0}, 1);
  p.add_term({2, 1}, 5);
  DegreeProfile lam{{2, 2}};
  PolyQ q = invert(p, lam);
  CHECK(q.coefficient({2, 2}) == 1);
  CHECK(q.coefficient({0, 1}) == 5);
  CHECK(invert(q, lam) == p);
}

TEST_CASE("elementary symmetric blocks") {
  PolyQ e2 = elementary_symmetric<Rat>(3, 0, 3, 2);
  CHECK(e2.support().size() == 3);
  CHECK(e2.coefficient({1, 1, 0}) == 1);
  CHECK(e2.coefficient({1, 0, 1}) == 1);
  CHECK(e2.coefficient({0, 1, 1}) == 1);
  PolyQ e0 = elementary_symmetric<Rat>(2, 0, 2, 0);
  CHECK(e0 == PolyQ::constant(2, 1));
  // offset places the block inside a wider variable set
  PolyQ shifted = elementary_symmetric<Rat>(4, 2, 2, 1);
  CHECK(shifted.coefficient({0, 0, 1, 0}) == 1);
  CHECK(shifted.coefficient({0, 0, 0, 1}) == 1);
}

TEST_CASE("polarization restores the input on the diagonal") {
  // p = 3 + x^2 y, profile (2, 1): blocks of sizes 2 and 1
  PolyQ p(2);
  p.add_term({0, 0}, 3);
  p.add_term({2, 1}, 1);
  DegreeProfile lam{{2, 1}};
  PolyQ pol = polarize(p, lam);
  CHECK(pol.arity() == 3);
  CHECK(pol.is_multiaffine());

  std::vector<Rat> x{Rat(1, 2), Rat(7, 3)};
  std::vector<Rat> diag{x[0], x[0], x[1]};
  CHECK(pol.eval(diag) == p.eval(x));

  std::vector<double> pt = polarize_point({1.0, 0.5}, lam);
  CHECK(pt == std::vector<double>{0.5, 0.5, 0.5});
}

TEST_CASE("symmetrization") {
  PolyQ p(2);
  p.add_term({2, 0}, 1);
  PolyQ s = symmetrize(p);
  CHECK(s.coefficient({2, 0}) == Rat(1, 2));
  CHECK(s.coefficient({0, 2}) == Rat(1, 2));
  CHECK(is_symmetric(s));
  CHECK_FALSE(is_symmetric(p));
  CHECK(symmetrize(s) == s);
}

TEST_CASE("json round trips") {
  PolyQ p(2);
  p.add_term({1, 0}, Rat(1, 3));
  p.add_term({0, 2}, Rat(7));
  nlohmann::json j = poly_to_json(p);
  CHECK(j["mode"] == "rational");
  CHECK(poly_rational_from_json(j) == p);

  PolyD d(1);
  d.add_term({3}, 0.25);
  nlohmann::json jd = poly_to_json(d);
  CHECK(jd["mode"] == "float");
  CHECK(poly_float_from_json(jd) == d);

  // rational files can be read as float input
  PolyD via = poly_as_float_from_json(j);
  CHECK(via.coefficient({0, 2}) == 7.0);
}

TEST_CASE("json rejects malformed input") {
  nlohmann::json j{{"arity", 2}, {"mode", "rational"}};
  j["terms"] = nlohmann::json::array();
  j["terms"].push_back({{"exponents", {1, 0}}, {"coef", "1/2"}});
  j["terms"].push_back({{"exponents", {1, 0}}, {"coef", "1/3"}});
  CHECK_THROWS_AS(poly_rational_from_json(j), std::invalid_argument);  // dup

  nlohmann::json bad{{"arity", 1}, {"mode", "rational"}};
  bad["terms"] = nlohmann::json::array();
  bad["terms"].push_back({{"exponents", {1, 2}}, {"coef", "1"}});
  CHECK_THROWS_AS(poly_rational_from_json(bad), std::invalid_argument);

  nlohmann::json neg{{"arity", 1}, {"mode", "float"}};
  neg["terms"] = nlohmann::json::array();
  neg["terms"].push_back({{"exponents", {1}}, {"coef", -2.0}});
  CHECK_THROWS_AS(poly_float_from_json(neg), std::invalid_argument);
}
