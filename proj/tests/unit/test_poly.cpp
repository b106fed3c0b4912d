#include <doctest.h>

#include "helpers.hpp"
#include "polylab/error.hpp"
#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

using namespace polylab;
using testing::poly;

TEST_CASE("graded order lists degree three monomials leading variable first") {
  const auto ms = monomials_up_to(3, 2);
  REQUIRE(ms.size() == 10);
  CHECK(ms[0] == Monomial::one(2));
  std::vector<std::string> top;
  for (std::size_t k = 6; k < 10; ++k) top.push_back(ms[k].label());
  CHECK(top == std::vector<std::string>{"x^3", "x^2*y", "x*y^2", "y^3"});
}

TEST_CASE("permuted order puts y first") {
  const auto ms = monomials_up_to(1, 2, MonomialOrder({1, 0}));
  REQUIRE(ms.size() == 3);
  CHECK(ms[1].label() == "y");
  CHECK(ms[2].label() == "x");
}

TEST_CASE("product and evaluation agree with hand expansion") {
  const MultiPoly a = poly(2, {{{1, 0}, 1.0}, {{0, 1}, 2.0}});   // x + 2y
  const MultiPoly b = poly(2, {{{1, 0}, 1.0}, {{0, 0}, -1.0}});  // x - 1
  const MultiPoly ab = a * b;
  const MultiPoly expect = poly(2, {{{2, 0}, 1.0}, {{1, 1}, 2.0}, {{1, 0}, -1.0}, {{0, 1}, -2.0}});
  CHECK(testing::max_coeff_diff(ab, expect) == 0.0);
  const Point x{cplx(0.3, -1.2), cplx(2.0, 0.5)};
  CHECK(std::abs(ab.eval(x) - testing::naive_eval(ab, x)) < 1e-14);
  CHECK(ab.total_degree() == 2);
  CHECK(MultiPoly(2).total_degree() == -1);
}

TEST_CASE("translation matches evaluation at shifted points") {
  Rng rng(3);
  MultiPoly p = poly(2, {{{3, 0}, 1.0}, {{1, 2}, cplx(0, 2)}, {{0, 1}, -0.5}, {{0, 0}, 4.0}});
  const Point s{cplx(1.0 / 3), cplx(-0.25, 0.1)};
  const MultiPoly q = p.translate(s);
  for (int k = 0; k < 20; ++k) {
    const Point x{rng.complex_normal(), rng.complex_normal()};
    const Point xs{x[0] - s[0], x[1] - s[1]};
    CHECK(std::abs(q.eval(x) - testing::naive_eval(p, xs)) < 1e-12);
  }
}

TEST_CASE("derivative of x^2 y is 2 x y") {
  const MultiPoly p = poly(2, {{{2, 1}, 1.0}});
  CHECK(testing::max_coeff_diff(p.differentiate(0), poly(2, {{{1, 1}, 2.0}})) == 0.0);
  CHECK(testing::max_coeff_diff(p.differentiate(1), poly(2, {{{2, 0}, 1.0}})) == 0.0);
}

TEST_CASE("univariate polynomial from roots") {
  const std::vector<cplx> r{1.0, 2.0, 3.0};
  const UniPoly p = UniPoly::from_roots(r);
  REQUIRE(p.degree() == 3);
  CHECK(p.coeff(0) == cplx(-6.0));
  CHECK(p.coeff(1) == cplx(11.0));
  CHECK(p.coeff(2) == cplx(-6.0));
  CHECK(p.coeff(3) == cplx(1.0));
  CHECK(std::abs(p.derivative().eval(2.0) - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(p.translate(1.0).eval(3.0)) < 1e-14);
}

TEST_CASE("system helpers") {
  PolySystem s;
  s.d = 2;
  s.polys = {poly(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0}}), poly(2, {{{0, 3}, 1.0}, {{1, 0}, -1.0}})};
  CHECK(rho(s) == 4);
  CHECK(bezout_count(s) == 6);
  const Point x{1.0, 1.0};
  CHECK(s.residual(x) == doctest::Approx(0.0));
  const CMatrix J = jacobian(s, x);
  CHECK(J(0, 0) == cplx(2.0));
  CHECK(J(0, 1) == cplx(0.0));
  CHECK(J(1, 0) == cplx(-1.0));
  CHECK(J(1, 1) == cplx(3.0));
  s.polys.pop_back();
  CHECK_THROWS_AS(s.validate(), DimensionMismatch);
}

TEST_CASE("rng streams are reproducible and independent") {
  Rng a(7), b(7);
  CHECK(a.normal() == b.normal());
  Rng c = Rng(7).split(1), e = Rng(7).split(2);
  CHECK(c.uniform() != e.uniform());
  CHECK(Rng(7).split(1).uniform() == Rng(7).split(1).uniform());
}
