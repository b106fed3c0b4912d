#pragma once

#include <span>
#include <vector>

#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

namespace polylab {

/// Matrix pencil A - lambda B, optionally labelled by monomials.
struct GenEigProblem {
  CMatrix A;
  CMatrix B;
  std::vector<Monomial> row_labels;
  std::vector<Monomial> col_labels;

  Eigen::Index size() const { return A.rows(); }
  void validate() const;
};

/// One eigenvalue with unit left and right eigenvectors.
///
/// The left vector follows the transpose convention: left^T (A - lambda B) = 0.
struct EigTriple {
  cplx lambda{0.0};
  cplx alpha{0.0};
  cplx beta{0.0};
  bool infinite = false;
  CVector right;
  CVector left;
};

struct SvdResult {
  CMatrix U;
  CMatrix V;
  Eigen::VectorXd singular_values;  // descending
};

SvdResult svd(const CMatrix& M);
Eigen::VectorXd singular_values(const CMatrix& M);
double sigma_min(const CMatrix& M);
double norm2(const CMatrix& M);
double condition_number(const CMatrix& M);

/// Relative |beta| threshold below which an eigenvalue is reported as infinite.
inline constexpr double kInfiniteEigThreshold = 1e-12;

/// QZ-based generalized eigendecomposition with left and right eigenvectors.
/// Throws SingularPencil if det(A - lambda B) is numerically zero at three
/// random probes.
std::vector<EigTriple> generalized_eig(const GenEigProblem& gep);

/// Random-probe regularity test used by generalized_eig.
bool is_regular_pencil(const GenEigProblem& gep);

/// Fixed-nullity null space: right singular vectors of the `nullity`
/// smallest singular values.
struct NullSpace {
  CMatrix basis;
  /// sigma_rank / sigma_{rank+1}; infinite when the trailing value is zero.
  double gap = 0.0;
  bool weak_gap() const { return gap < 1e2; }
};

NullSpace null_space(const CMatrix& M, int nullity);

CMatrix kron(const CMatrix& A, const CMatrix& B);

/// Block determinant of a d x d grid where block (i, j) is n_i x n_i,
/// expanded by Leibniz with Kronecker products in row order.
CMatrix block_operator_determinant(const std::vector<std::vector<CMatrix>>& blocks);

/// Roots of p as eigenvalues of the monic companion matrix, balanced unless asked not to.
std::vector<cplx> companion_roots(const UniPoly& p, bool balance = true);

CMatrix random_orthogonal(int d, Rng& rng);
std::vector<int> random_permutation(int d, Rng& rng);
CMatrix permutation_matrix(std::span<const int> perm);
Eigen::VectorXd random_unit_vector(int d, Rng& rng);

}  // namespace polylab
