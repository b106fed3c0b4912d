#pragma once

#include <limits>
#include <string>
#include <vector>

#include "polylab/conditioning.hpp"
#include "polylab/linalg.hpp"
#include "polylab/macaulay.hpp"
#include "polylab/mep.hpp"
#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

namespace polylab {

struct Diagnostics {
  std::vector<Monomial> basis;
  double basis_condition = std::numeric_limits<double>::quiet_NaN();
  double sigma_min_hat = std::numeric_limits<double>::quiet_NaN();
  double nullspace_gap = std::numeric_limits<double>::quiet_NaN();
  std::vector<Monomial> dropped_h_rows;
  std::vector<std::string> warnings;
};

struct RootReport {
  std::string method;
  std::vector<Point> roots;
  std::vector<double> residuals;
  std::vector<double> kappa_root;  // +inf where the Jacobian is singular
  std::vector<double> subproblem_kappa;
  Diagnostics diagnostics;

  /// Recomputes residuals and kappa_root for every root.
  void fill_metrics(const PolySystem& s);
};

struct SolveOptions {
  /// Up to two Newton steps on the original system per root.
  bool polish = false;
  MonomialOrder order;
};

Point newton_polish(const PolySystem& s, Point x, int steps = 2);

/// Multiplication matrices in the basis chosen from the null space of M_rho.
/// Column k of M[i] is the normal form of x_i * b_k.
struct MSMatrices {
  std::vector<CMatrix> M;
  QuotientBasis quotient;
};

MSMatrices build_ms_matrices(const PolySystem& s, const MonomialOrder& order = {});

RootReport solve_normal_form(const PolySystem& s, Rng& rng, const SolveOptions& opts = {});

RootReport solve_macaulay_resultant(const PolySystem& s, Rng& rng, const SolveOptions& opts = {});

/// (A_2 Z, B_2 Z) with Z an orthonormal basis for the null space of A_1.
GenEigProblem reduce_macaulay_pencil(const MacaulayPencil& pen);

/// Residuals are |det W_i(x)| since det W_i = p_i.
RootReport solve_mep_operator_determinants(const MultiParamEig& mep, Rng& rng);
RootReport solve_mep_operator_determinants(const PolySystem& s, Rng& rng, const SolveOptions& opts = {});

/// A univariate reduction together with the estimate of its designated root.
struct UnivariateSolve {
  UniPoly poly;
  std::vector<cplx> roots;
  cplx target{0.0};
  cplx estimate{0.0};
  double error = 0.0;
  double kappa_uni = 0.0;
  std::vector<std::string> warnings;
};

/// g = (x - s)^(2^d) - sigma^(2^d - 1) (x - s), solved with companion_roots.
/// The designated root is s. Throws InvalidArgument when sigma^(2^d-1) overflows.
UnivariateSolve solve_gb_elimination_example(int d, double sigma, int i = 0, double shift = 0.0);

enum class RurMode { exact_roots, from_solver };

/// f(x) = prod over roots of (x - u.x_k). The designated root is t(x*) for the
/// first listed true root. from_solver takes the x_k from solve_normal_form.
UnivariateSolve solve_rur(const PolySystem& s, std::span<const double> u, RurMode mode, Rng& rng,
                          bool balance = true, int max_d = 10);

/// Hypercube instance with A = I; the designated root is (1/(c sqrt d), ...).
UnivariateSolve solve_rur_example(int d, double c, std::span<const double> u, RurMode mode, Rng& rng,
                                  bool balance = true, int max_d = 10);

/// Dispatches on method. gb needs a cyclic_squares system and rur a system
/// with known roots; both report roots of the univariate reduction.
RootReport solve(const PolySystem& s, Method method, Rng& rng, const SolveOptions& opts = {});

}  // namespace polylab

namespace polylab {

/// Condition reports for every method whose construction applies to `s` at root x:
/// gb (cyclic_squares), rur (systems with known roots), mep (single-square
/// quadratics), nf and macaulay. Predicted ratios are filled for the families
/// whose analysis gives one.
std::vector<ConditionReport> audit_root(const PolySystem& s, std::span<const cplx> x, Rng& rng);

}  // namespace polylab
