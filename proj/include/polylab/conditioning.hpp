#pragma once

#include <string>
#include <vector>

#include "polylab/families.hpp"
#include "polylab/linalg.hpp"
#include "polylab/macaulay.hpp"
#include "polylab/mep.hpp"
#include "polylab/poly.hpp"

namespace polylab {

enum class Method { gb, rur, mep, nf, macaulay };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct ConditionReport {
  std::string method_tag;
  double kappa_root = 0.0;
  double kappa_sub = 0.0;
  double ratio = 0.0;  // kappa_sub / kappa_root
  /// Predicted ratio for the devastating family, when one applies (NaN otherwise).
  double predicted_ratio = std::numeric_limits<double>::quiet_NaN();
  std::string note;

  static ConditionReport make(std::string tag, double kroot, double ksub);
};

/// ||J(x*)^{-1}||_2. Throws SingularJacobian.
double kappa_root(const PolySystem& s, std::span<const cplx> x);

/// 1 / |p'(x*)|.
double kappa_uni(const UniPoly& p, cplx x);

/// ||y|| ||x|| / |y^T B x| * (1 + |lambda|) for a finite eigentriple.
double kappa_eig(const GenEigProblem& gep, const EigTriple& t);
double kappa_eig(const CVector& left, const CVector& right, const CMatrix& B, cplx lambda);

/// Null vectors of each W_i(x*) from its SVD: W_i v_i = 0 and u_i^T W_i = 0.
struct MepNullData {
  std::vector<CVector> u;
  std::vector<CVector> v;
  std::vector<double> nonzero_sv_product;  // product of all but the smallest singular value
  std::vector<cplx> d_scale;               // D_ii with D B_0 = J
};

MepNullData mep_null_data(const MultiParamEig& mep, std::span<const cplx> x);

/// B_0(i, j) = u_i^T V_ij v_i.
CMatrix b0_matrix(const MultiParamEig& mep, const MepNullData& nd);
CMatrix b0_matrix(const MultiParamEig& mep, std::span<const cplx> x);

/// Operator-determinant eigenvalue condition from the singular values of W_k(x*) and det J.
double kappa_eig_mep_formula(const MultiParamEig& mep, const PolySystem& s, std::span<const cplx> x, int i);

/// p = Q (x - x*), entries of Q polynomials.
struct QFactorization {
  std::vector<std::vector<MultiPoly>> Q;
  Point shift;

  int d() const { return static_cast<int>(Q.size()); }
  /// Q (x - shift) as a system of polynomials.
  std::vector<MultiPoly> reconstruct() const;
};

/// Taylor-shift division: each term of p_i(x* + y) goes to the column of its lowest
/// variable with a positive exponent. Throws NotARoot when |p_i(x*)| > 1e-10.
QFactorization q_factorization(const PolySystem& s, std::span<const cplx> x);

MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& M);

/// Sum over subsets I of det(Q with rows/cols I removed) * prod_{k in I} r_k.
MultiPoly lagrange_interpolant(const QFactorization& qf, const std::vector<MultiPoly>& r);
MultiPoly lagrange_interpolant(const QFactorization& qf);

/// Coefficients of f over the basis of `q`, via c = N_B^{-T} N^T f.
/// Throws BasisSingular when the basis rows of N have condition above 1e12.
CVector normal_form(const MultiPoly& f, const QuotientBasis& q);

double kappa_eig_ms_formula(const PolySystem& s, std::span<const cplx> x, const QuotientBasis& q, int i);

/// ||[det Q]_B|| ||V(x*)|| / |det J(x*) h(x*)|, with V the column labels of the Macaulay matrix.
double kappa_eig_macaulay_bound(const PolySystem& s, std::span<const cplx> x, const QuotientBasis& q,
                                const MultiPoly& h);

/// Unit roundoff used by the digit predictions.
inline constexpr double kUnitRoundoff = 1e-16;

/// clamp(-log10(kappa u), 0, 16).
double digits_from_kappa(double kappa);

/// Condition number predicted for the designated root of `family` by the analysis of `method`.
double theory_kappa(Method method, Family family, int d, double param);
/// kappa_root of the designated root.
double stable_kappa(Family family, int d, double param);

double theory_digits(Method method, Family family, int d, double param);
double stable_digits(Family family, int d, double param);

}  // namespace polylab
