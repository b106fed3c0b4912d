#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "polylab/linalg.hpp"
#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

namespace polylab {

/// Row label of a Macaulay matrix: multiplier * p_poly, or multiplier * h when poly < 0.
struct MacaulayRow {
  int poly = -1;
  Monomial multiplier;

  std::string label() const;
};

struct MacaulayMatrix {
  CMatrix mat;
  std::vector<MacaulayRow> row_labels;
  std::vector<Monomial> col_labels;
  int degree = 0;
};

/// Rows m * p_i for every monomial m with deg(m) <= degree - deg(p_i),
/// grouped by polynomial, multipliers in monomial order.
MacaulayMatrix macaulay_hat(const PolySystem& s, int degree, const MonomialOrder& order = {});

/// Quotient-algebra data read off the null space of the degree-rho Macaulay matrix.
struct QuotientBasis {
  std::vector<Monomial> labels;  // column labels of M_rho (monomials of degree <= rho)
  CMatrix N;                     // orthonormal null-space basis, labels.size() x r
  std::vector<Monomial> basis;   // r monomials of degree <= rho - 1
  double basis_condition = 0.0;  // condition number of the basis rows of N
  double nullspace_gap = 0.0;
  double sigma_min_hat = 0.0;    // smallest nonzero singular value of M_rho

  /// Rows of N for the given monomials (all must be labels).
  CMatrix rows(std::span<const Monomial> monomials) const;
};

/// Builds M_rho, its null space with nullity = Bezout count, and a basis.
/// When `basis` is given it is used as-is; otherwise choose_basis selects one.
/// Throws NullityMismatch when the numerical nullity differs from the Bezout count.
QuotientBasis quotient_basis(const PolySystem& s, const MonomialOrder& order = {},
                             const std::optional<std::vector<Monomial>>& basis = std::nullopt);

/// Column-pivoted QR on the candidate rows of the null space of `hat`.
std::vector<Monomial> choose_basis(const MacaulayMatrix& hat, int r);
std::vector<Monomial> choose_basis(const CMatrix& N, std::span<const Monomial> labels, int max_degree, int r);

/// Square pencil [A1; A2] - lambda [0; B2]: A1 = M_rho, and one h-row per
/// basis monomial with h = (alpha_0 - lambda beta_0) + sum (alpha_i - lambda beta_i) x_i.
struct MacaulayPencil {
  GenEigProblem gep;
  Eigen::Index p_rows = 0;
  std::vector<Monomial> kept_h_monomials;
  std::vector<Monomial> dropped_h_monomials;
  CVector alpha;
  CVector beta;
  QuotientBasis quotient;

  MultiPoly h_alpha() const;
  MultiPoly h_beta() const;
};

/// Throws SingularPencil if three draws of (alpha, beta) all give a singular pencil.
MacaulayPencil macaulay_pencil(const PolySystem& s, Rng& rng, const MonomialOrder& order = {});

/// sigma_min(M_rho): smallest singular value over min(rows, cols).
double smallest_singular_hat(const PolySystem& s);

/// CSV dump: header row of column monomials, one labelled row per Macaulay row.
void write_macaulay_csv(const MacaulayMatrix& m, std::ostream& os);

}  // namespace polylab
