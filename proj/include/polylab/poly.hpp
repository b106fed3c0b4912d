#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polylab {

using cplx = std::complex<double>;
using Point = std::vector<cplx>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Exponent vector of a monomial in d variables.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e);

  static Monomial one(int nvars);
  static Monomial var(int nvars, int i);

  int nvars() const { return static_cast<int>(exps.size()); }
  int degree() const;
  bool divisible_by_var(int i) const { return exps[static_cast<std::size_t>(i)] > 0; }

  Monomial operator*(const Monomial& other) const;
  Monomial times_var(int i) const;

  cplx eval(std::span<const cplx> x) const;

  /// Human-readable label such as "1", "x", "x^2*y" (x1..xd beyond three variables).
  std::string label() const;

  auto operator<=>(const Monomial&) const = default;
};

/// Graded lexicographic order over a configurable variable permutation.
///
/// Monomials are listed by increasing total degree; within a degree the one
/// with the larger exponent in the leading variable comes first, so the
/// degree-3 listing in two variables is x^3, x^2y, xy^2, y^3.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<int> permutation);

  /// True if `a` is listed strictly before `b`.
  bool before(const Monomial& a, const Monomial& b) const;

  const std::vector<int>& permutation() const { return perm_; }

 private:
  int variable_at(int k) const;
  std::vector<int> perm_;  // empty means identity
};

/// Sparse multivariate polynomial with complex coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, cplx>;

  explicit MultiPoly(int nvars = 1);
  MultiPoly(int nvars, TermMap terms);

  static MultiPoly constant(int nvars, cplx c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(const Monomial& m, cplx c = 1.0);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  cplx coeff(const Monomial& m) const;
  double max_abs_coeff() const;

  /// Evaluation with compensated summation over the terms listed in `order`.
  cplx eval(std::span<const cplx> x, const MonomialOrder& order = {}) const;

  MultiPoly differentiate(int i) const;

  /// Returns q with q(x) = p(x - s).
  MultiPoly translate(std::span<const cplx> s) const;

  MultiPoly scaled(cplx c) const;
  MultiPoly homogeneous_part(int degree) const;

  std::string to_string() const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(cplx c, const MultiPoly& a) { return a.scaled(c); }
  friend MultiPoly operator-(const MultiPoly& a) { return a.scaled(-1.0); }

 private:
  void normalize();
  int nvars_;
  TermMap terms_;
};

/// Dense univariate polynomial, coefficients in ascending degree.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<cplx> coeffs);

  static UniPoly from_roots(std::span<const cplx> roots);

  const std::vector<cplx>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  cplx coeff(int k) const;

  cplx eval(cplx x) const;
  UniPoly derivative() const;
  UniPoly scaled(cplx s) const;
  /// Returns q with q(x) = p(x - s).
  UniPoly translate(cplx s) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  std::vector<cplx> c_;
};

/// d polynomials in d variables, optionally carrying known roots.
struct PolySystem {
  int d = 0;
  std::vector<MultiPoly> polys;
  std::optional<std::vector<Point>> true_roots;
  std::string family_tag;
  std::map<std::string, double> family_params;

  /// Throws DimensionMismatch / InvalidArgument when the invariants fail.
  void validate() const;

  double coefficient_scale() const;
  Eigen::VectorXcd eval(std::span<const cplx> x) const;
  double residual(std::span<const cplx> x) const;
  /// Returns the system q(x) = p(x - s), with known roots moved by s.
  PolySystem translated(std::span<const cplx> s) const;
};

CMatrix jacobian(const PolySystem& s, std::span<const cplx> x);

/// Sum of total degrees minus d plus one.
int rho(const PolySystem& s);

/// Product of total degrees.
long long bezout_count(const PolySystem& s);

std::vector<Monomial> monomials_up_to(int degree, int d, const MonomialOrder& order = {});

/// Position of each monomial in a label list.
std::map<Monomial, int> label_index(std::span<const Monomial> labels);

/// Evaluation of a label list at a point.
CVector eval_labels(std::span<const Monomial> labels, std::span<const cplx> x);

}  // namespace polylab
