#include "polylab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "polylab/error.hpp"

namespace polylab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

void GenEigProblem::validate() const {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw DimensionMismatch("pencil matrices must be square and of equal size");
  }
  if (!row_labels.empty() && static_cast<Eigen::Index>(row_labels.size()) != A.rows()) {
    throw DimensionMismatch("row label count differs from pencil size");
  }
  if (!col_labels.empty() && static_cast<Eigen::Index>(col_labels.size()) != A.cols()) {
    throw DimensionMismatch("column label count differs from pencil size");
  }
}

SvdResult svd(const CMatrix& M) {
  Eigen::BDCSVD<CMatrix> solver(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("SVD did not converge");
  return {solver.matrixU(), solver.matrixV(), solver.singularValues()};
}

Eigen::VectorXd singular_values(const CMatrix& M) {
  Eigen::BDCSVD<CMatrix> solver(M);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("SVD did not converge");
  return solver.singularValues();
}

double sigma_min(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  const Eigen::VectorXd s = singular_values(M);
  return s(s.size() - 1);
}

double norm2(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  return singular_values(M)(0);
}

double condition_number(const CMatrix& M) {
  const Eigen::VectorXd s = singular_values(M);
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

bool is_regular_pencil(const GenEigProblem& gep) {
  gep.validate();
  const Eigen::Index n = gep.size();
  if (n == 0) return true;
  // Fixed probe seed keeps the test a pure function of the pencil.
  Rng probe(0x5eedULL);
  const double na = gep.A.norm();
  const double nb = gep.B.norm();
  for (int k = 0; k < 3; ++k) {
    const cplx lam = probe.complex_normal();
    const double scale = na + std::abs(lam) * nb;
    if (scale == 0.0) continue;
    if (sigma_min(gep.A - lam * gep.B) > 10.0 * static_cast<double>(n) * kEps * scale) return true;
  }
  return false;
}

std::vector<EigTriple> generalized_eig(const GenEigProblem& gep) {
  gep.validate();
  const Eigen::Index n = gep.size();
  if (n == 0) return {};

  if (!is_regular_pencil(gep)) throw SingularPencil("det(A - lambda B) vanishes at every probe");

  CMatrix A = gep.A;
  CMatrix B = gep.B;
  CVector alpha(n), beta(n);
  CMatrix VL(n, n), VR(n, n);
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n), A.data(),
                                        static_cast<lapack_int>(n), B.data(), static_cast<lapack_int>(n),
                                        alpha.data(), beta.data(), VL.data(), static_cast<lapack_int>(n),
                                        VR.data(), static_cast<lapack_int>(n));
  if (info != 0) throw ConvergenceFailure("zggev failed with info " + std::to_string(info));

  std::vector<EigTriple> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    EigTriple t;
    t.alpha = alpha(k);
    t.beta = beta(k);
    const double a = std::abs(t.alpha);
    const double b = std::abs(t.beta);
    t.infinite = b <= kInfiniteEigThreshold * (a + b);
    t.lambda = t.infinite ? cplx{std::numeric_limits<double>::infinity(), 0.0} : t.alpha / t.beta;
    t.right = VR.col(k).normalized();
    // zggev returns u with u^H (A - lambda B) = 0; store conj(u) for the transpose convention.
    t.left = VL.col(k).conjugate().normalized();
    out.push_back(std::move(t));
  }
  return out;
}

NullSpace null_space(const CMatrix& M, int nullity) {
  const Eigen::Index ncols = M.cols();
  if (nullity < 1 || nullity > ncols) throw InvalidArgument("nullity must lie in [1, column count]");
  if (M.rows() == 0) {
    NullSpace ns;
    ns.basis = CMatrix::Identity(ncols, ncols).rightCols(nullity);
    ns.gap = std::numeric_limits<double>::infinity();
    return ns;
  }
  const SvdResult s = svd(M);
  NullSpace ns;
  ns.basis = s.V.rightCols(nullity);
  const Eigen::Index rank = ncols - nullity;
  auto sv = [&](Eigen::Index k) { return k < s.singular_values.size() ? s.singular_values(k) : 0.0; };
  if (rank == 0) {
    ns.gap = std::numeric_limits<double>::infinity();
  } else {
    const double lead = sv(rank - 1);
    const double trail = sv(rank);
    ns.gap = trail == 0.0 ? std::numeric_limits<double>::infinity() : lead / trail;
  }
  return ns;
}

CMatrix kron(const CMatrix& A, const CMatrix& B) { return Eigen::kroneckerProduct(A, B).eval(); }

CMatrix block_operator_determinant(const std::vector<std::vector<CMatrix>>& blocks) {
  const std::size_t d = blocks.size();
  if (d == 0) throw InvalidArgument("empty block grid");
  std::vector<Eigen::Index> n(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (blocks[i].size() != d) throw DimensionMismatch("block grid must be square");
    n[i] = blocks[i][0].rows();
    for (const auto& blk : blocks[i]) {
      if (blk.rows() != n[i] || blk.cols() != n[i]) throw DimensionMismatch("block row sizes are inconsistent");
    }
  }
  const Eigen::Index total = std::accumulate(n.begin(), n.end(), Eigen::Index{1}, std::multiplies<>());
  CMatrix out = CMatrix::Zero(total, total);
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    CMatrix term = blocks[0][static_cast<std::size_t>(perm[0])];
    for (std::size_t i = 1; i < d; ++i) term = kron(term, blocks[i][static_cast<std::size_t>(perm[i])]);
    out += static_cast<double>(permutation_sign(perm)) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<cplx> companion_roots(const UniPoly& p, bool balance) {
  const int n = p.degree();
  if (n < 1) throw InvalidArgument("companion_roots needs a polynomial of degree >= 1");
  const cplx lead = p.coeff(n);
  CMatrix C = CMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) C(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) C(k, n - 1) = -p.coeff(k) / lead;
  CVector w(n);
  lapack_int ilo = 0, ihi = 0;
  double abnrm = 0.0;
  Eigen::VectorXd scale(n), rconde(n), rcondv(n);
  const lapack_int info =
      LAPACKE_zgeevx(LAPACK_COL_MAJOR, balance ? 'B' : 'N', 'N', 'N', 'N', n, C.data(), n, w.data(), nullptr, 1,
                     nullptr, 1, &ilo, &ihi, scale.data(), &abnrm, rconde.data(), rcondv.data());
  if (info != 0) throw ConvergenceFailure("zgeevx failed with info " + std::to_string(info));
  return {w.data(), w.data() + n};
}

CMatrix random_orthogonal(int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  Eigen::MatrixXd G(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) G(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  }
  return Q.cast<cplx>();
}

std::vector<int> random_permutation(int d, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = d - 1; i > 0; --i) {
    const auto j = rng.index(static_cast<std::size_t>(i) + 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  return perm;
}

CMatrix permutation_matrix(std::span<const int> perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  CMatrix P = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) P(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return P;
}

Eigen::VectorXd random_unit_vector(int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  Eigen::VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace polylab
