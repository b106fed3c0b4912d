#include <doctest.h>

#include "helpers.hpp"
#include "polylab/conditioning.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/solvers.hpp"

using namespace polylab;
using testing::poly;

namespace {
FamilySpec make(Family f, int d, double param, bool randomize = true) {
  FamilySpec s;
  s.family = f;
  s.d = d;
  s.param = param;
  s.randomize = randomize;
  return s;
}
}  // namespace

TEST_CASE("cyclic squares in two variables") {
  Rng rng(1);
  const PolySystem s = generate(make(Family::cyclic_squares, 2, 0.1), rng);
  CHECK(testing::max_coeff_diff(s.polys[0], poly(2, {{{2, 0}, 1.0}, {{0, 1}, -0.1}})) < 1e-16);
  CHECK(testing::max_coeff_diff(s.polys[1], poly(2, {{{0, 2}, 1.0}, {{1, 0}, -0.1}})) < 1e-16);
  REQUIRE(s.true_roots);
  CHECK(s.true_roots->size() == 4);
  // Nonzero roots are (w 0.1, w^2 0.1) with w^3 = 1.
  const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
  CHECK(testing::covers(*s.true_roots, {{0.0, 0.0}, {0.1, 0.1}, {w * 0.1, w * w * 0.1}}, 1e-14));
}

TEST_CASE("hypercube with identity matrix") {
  Rng rng(1);
  const PolySystem s = generate(make(Family::hypercube, 2, 4.0, false), rng);
  CHECK(testing::max_coeff_diff(s.polys[0], poly(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0 / 32}})) < 1e-16);
  REQUIRE(s.true_roots->size() == 4);
  const double r = 1.0 / (4.0 * std::sqrt(2.0));
  CHECK(testing::covers(*s.true_roots, {{r, r}, {-r, r}, {r, -r}, {-r, -r}}, 1e-15));
  const Point x = designated_root(make(Family::hypercube, 2, 4.0));
  CHECK(x[0].real() == doctest::Approx(r));
}

TEST_CASE("shifted orthogonal family keeps its conditioning") {
  Rng rng(1);
  FamilySpec spec = make(Family::orthogonal, 2, 1e-3);
  spec.shift = Point{1.0 / 3, 1.0 / 3};
  const PolySystem s = generate(spec, rng);
  const Point x = designated_root(spec);
  CHECK(x[0].real() == doctest::Approx(1.0 / 3));
  CHECK(s.residual(x) < 1e-15);
  CHECK(kappa_root(s, x) == doctest::Approx(1e3).epsilon(1e-10));
}

TEST_CASE("every family's roots satisfy the system") {
  Rng rng(5);
  for (Family f : {Family::orthogonal, Family::cyclic_squares, Family::hypercube, Family::permutation, Family::notdev2d,
                   Family::notdev3d}) {
    const int d = f == Family::notdev2d ? 2 : 3;
    const double param = f == Family::hypercube ? 10.0 : 0.05;
    FamilySpec spec = make(f, d, param);
    spec.shift = Point(static_cast<std::size_t>(d), cplx(0.2, -0.1));
    const PolySystem s = generate(spec, rng);
    REQUIRE(s.true_roots);
    INFO(to_string(f));
    for (const auto& r : *s.true_roots) CHECK(s.residual(r) <= 1e-12 * s.coefficient_scale());
    CHECK(s.residual(designated_root(spec)) <= 1e-12 * s.coefficient_scale());
  }
}

TEST_CASE("shift equivariance") {
  Rng rng(6);
  FamilySpec spec = make(Family::permutation, 3, 0.1);
  Rng r1(9), r2(9);
  const PolySystem base = generate(spec, r1);
  spec.shift = Point{0.5, -0.25, cplx(0, 1)};
  const PolySystem moved = generate(spec, r2);
  for (int k = 0; k < 20; ++k) {
    const Point x{rng.complex_normal(), rng.complex_normal(), rng.complex_normal()};
    const Point back{x[0] - 0.5, x[1] + 0.25, x[2] - cplx(0, 1)};
    CHECK((moved.eval(x) - base.eval(back)).norm() <= 1e-12 * (1 + base.eval(back).norm()));
  }
}

TEST_CASE("orthogonal family has kappa_root 1/sigma at the origin") {
  Rng rng(2);
  for (double sigma : {1e-1, 1e-4}) {
    const PolySystem s = generate(make(Family::orthogonal, 3, sigma), rng);
    CHECK(kappa_root(s, Point(3, 0.0)) == doctest::Approx(1.0 / sigma).epsilon(1e-10));
  }
}

TEST_CASE("family spec validation and parsing") {
  CHECK(parse_family("cyclic_squares") == Family::cyclic_squares);
  CHECK_THROWS_AS(parse_family("nope"), InvalidArgument);
  CHECK_THROWS_AS(make(Family::orthogonal, 0, 0.1).validate(), InvalidArgument);
  CHECK_THROWS_AS(make(Family::notdev2d, 3, 0.1).validate(), InvalidArgument);
}

TEST_CASE("true root error") {
  RootReport r;
  CHECK(std::isinf(true_root_error(r, Point{0.0})));
  r.roots = {{1.0, 2.0}, {0.0, 1e-8}};
  CHECK(true_root_error(r, Point{0.0, 0.0}) == doctest::Approx(1e-8));
  CHECK(true_root_error(r, Point{1.0, 2.0}) == 0.0);
}
