#include <doctest.h>

#include "helpers.hpp"
#include "polylab/conditioning.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/macaulay.hpp"

using namespace polylab;
using testing::poly;

TEST_CASE("root condition number") {
  PolySystem s;
  s.d = 2;
  s.polys = {poly(2, {{{1, 0}, 2.0}}), poly(2, {{{0, 1}, 0.5}})};
  CHECK(kappa_root(s, Point{0.0, 0.0}) == doctest::Approx(2.0));
  s.polys[1] = poly(2, {{{0, 2}, 1.0}});
  CHECK_THROWS_AS(kappa_root(s, Point{0.0, 0.0}), SingularJacobian);
}

TEST_CASE("univariate and eigenvalue condition numbers") {
  const UniPoly p(std::vector<cplx>{-1.0, 0.0, 1.0});
  CHECK(kappa_uni(p, 1.0) == doctest::Approx(0.5));
  // Diagonal pencil: eigenvectors are unit coordinate vectors and y^T B x = 1.
  CVector e(2);
  e << 1.0, 0.0;
  CHECK(kappa_eig(e, e, CMatrix::Identity(2, 2), 3.0) == doctest::Approx(4.0));
  CMatrix B = CMatrix::Identity(2, 2);
  B(0, 0) = 0.0;
  CHECK_THROWS_AS(kappa_eig(e, e, B, 1.0), EigenvectorDegenerate);
}

TEST_CASE("Q factorization reconstructs the system") {
  Rng rng(1);
  const PolySystem s = random_dense_system(2, 2, rng);
  // Move the system so that a chosen point is a root.
  const Point x{cplx(0.3, 0.1), cplx(-0.7, 0.2)};
  PolySystem t = s;
  for (auto& p : t.polys) p = p - MultiPoly::constant(2, p.eval(x));
  const QFactorization qf = q_factorization(t, x);
  const auto rec = qf.reconstruct();
  for (int i = 0; i < 2; ++i) CHECK(testing::max_coeff_diff(rec[i], t.polys[i]) < 1e-13);
  CHECK(std::abs(poly_determinant(qf.Q).eval(x) - jacobian(t, x).determinant()) < 1e-12);
  CHECK_THROWS_AS(q_factorization(s, x), NotARoot);
}

TEST_CASE("polynomial determinant of a 2x2 matrix") {
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  const std::vector<std::vector<MultiPoly>> M{{x, y}, {MultiPoly::constant(2, 1.0), x}};
  CHECK(testing::max_coeff_diff(poly_determinant(M), x * x - y) == 0.0);
}

TEST_CASE("Lagrange interpolant of x^2 - 1 at 1 is x + 1") {
  PolySystem s;
  s.d = 1;
  s.polys = {poly(1, {{{2}, 1.0}, {{0}, -1.0}})};
  const MultiPoly q = lagrange_interpolant(q_factorization(s, Point{1.0}));
  CHECK(testing::max_coeff_diff(q, poly(1, {{{1}, 1.0}, {{0}, 1.0}})) < 1e-15);
}

TEST_CASE("normal form of a polynomial in the ideal is zero") {
  Rng rng(2);
  const PolySystem s = random_dense_system(2, 2, rng);
  const QuotientBasis q = quotient_basis(s);
  const MultiPoly f = s.polys[0] * MultiPoly::variable(2, 1) + s.polys[1].scaled(3.0);
  CHECK(normal_form(f, q).norm() < 1e-10);
  // A basis monomial reduces to its own coordinate vector.
  const CVector e = normal_form(MultiPoly::monomial(q.basis[2]), q);
  CHECK(std::abs(e(2) - 1.0) < 1e-10);
  CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("theory curves") {
  CHECK(digits_from_kappa(1e3) == doctest::Approx(13.0));
  CHECK(digits_from_kappa(1e30) == 0.0);
  CHECK(digits_from_kappa(0.5) == 16.0);
  CHECK(theory_kappa(Method::gb, Family::cyclic_squares, 2, 0.1) == doctest::Approx(1e3));
  CHECK(theory_kappa(Method::rur, Family::hypercube, 2, 4.0) == doctest::Approx(8.0));
  CHECK(theory_kappa(Method::mep, Family::permutation, 4, 1e-2) == doctest::Approx(1e8));
  CHECK(theory_digits(Method::mep, Family::permutation, 3, 1e-2) == doctest::Approx(10.0));
  CHECK(stable_kappa(Family::orthogonal, 2, 1e-3) == doctest::Approx(1e3));
  CHECK(stable_kappa(Family::hypercube, 4, 10.0) == doctest::Approx(10.0));
  CHECK(parse_method("mac") == Method::macaulay);
  CHECK_THROWS_AS(parse_method("qr"), InvalidArgument);
}

TEST_CASE("singular values of the operator blocks give D B0 = J") {
  Rng rng(3);
  FamilySpec spec;
  spec.family = Family::permutation;
  spec.d = 3;
  spec.param = 0.1;
  spec.shift = Point(3, 0.25);
  const PolySystem s = generate(spec, rng);
  const MultiParamEig mep = mep_from_system(s);
  const Point x = designated_root(spec);
  const MepNullData nd = mep_null_data(mep, x);
  const CMatrix B0 = b0_matrix(mep, nd);
  CMatrix D = CMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) D(i, i) = nd.d_scale[i];
  const CMatrix J = jacobian(s, x);
  CHECK((D * B0 - J).norm() <= 1e-10 * J.norm());
}
