#pragma once

#include <optional>
#include <string>

#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

namespace polylab {

enum class Family { orthogonal, cyclic_squares, hypercube, permutation, notdev2d, notdev3d };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// `param` is sigma for every family except hypercube, where it is c.
struct FamilySpec {
  Family family = Family::orthogonal;
  int d = 2;
  double param = 1e-2;
  std::optional<Point> shift;
  /// When false the orthogonal/permutation matrices are the identity.
  bool randomize = true;

  void validate() const;
};

/// Builds the system with closed-form roots; the random matrix (if any) is drawn from rng.
PolySystem generate(const FamilySpec& spec, Rng& rng);

/// The root a sweep measures: the origin, or (1/(c sqrt d), ...) for hypercube, plus the shift.
Point designated_root(const FamilySpec& spec);

/// d polynomials of total degree `degree` with complex Gaussian coefficients on every monomial.
PolySystem random_dense_system(int d, int degree, Rng& rng);

/// p_i = x_i^2 + random affine part, the shape accepted by the operator-determinant solver.
PolySystem random_square_system(int d, Rng& rng);

struct RootReport;

/// Smallest Euclidean distance from `truth` to a reported root; +inf for an empty report.
double true_root_error(const RootReport& report, std::span<const cplx> truth);
double distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace polylab
