#include <doctest.h>

#include "helpers.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/mep.hpp"
#include "polylab/solvers.hpp"

using namespace polylab;
using testing::poly;

TEST_CASE("2x2 representation has the polynomial as determinant") {
  const MultiPoly p = poly(2, {{{2, 0}, 3.0}, {{1, 0}, -1.0}, {{0, 1}, cplx(0, 2)}, {{0, 0}, 0.5}});
  const auto V = determinantal_representation_quadratic(p);
  REQUIRE(V.size() == 3);
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    const Point x{rng.complex_normal(), rng.complex_normal()};
    const CMatrix W = V[0] - x[0] * V[1] - x[1] * V[2];
    CHECK(std::abs(W.determinant() - testing::naive_eval(p, x)) < 1e-13);
  }
}

TEST_CASE("cross terms are not representable by the 2x2 form") {
  CHECK_THROWS_AS(determinantal_representation_quadratic(poly(2, {{{1, 1}, 1.0}, {{0, 0}, 1.0}})), UnsupportedShape);
}

TEST_CASE("operator determinants on a permutation system") {
  Rng rng(2);
  FamilySpec spec;
  spec.family = Family::permutation;
  spec.d = 3;
  spec.param = 0.1;
  const PolySystem s = generate(spec, rng);
  const MultiParamEig mep = mep_from_system(s);
  CHECK_NOTHROW(mep.check_represents(s, rng));
  const OperatorDeterminants od = operator_determinants(mep);
  CHECK(od.delta0.rows() == 8);
  CHECK(od.delta.size() == 3);
  // Commuting relations Delta_i Delta_0^{-1} Delta_j = Delta_j Delta_0^{-1} Delta_i.
  const CMatrix inv = od.delta0.inverse();
  CHECK((od.delta[0] * inv * od.delta[1] - od.delta[1] * inv * od.delta[0]).norm() < 1e-10);
}

TEST_CASE("operator determinant solver recovers every root") {
  Rng rng(3);
  const PolySystem s = random_square_system(2, rng);
  const RootReport r = solve_mep_operator_determinants(s, rng);
  CHECK(r.roots.size() == 4);
  for (double res : r.residuals) CHECK(res < 1e-9 * s.coefficient_scale());
}
