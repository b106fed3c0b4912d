#include "polylab/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polylab/error.hpp"

namespace polylab {
namespace {

double pow_int(double base, long long e) {
  return std::pow(base, static_cast<double>(e));
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::gb: return "gb";
    case Method::rur: return "rur";
    case Method::mep: return "mep";
    case Method::nf: return "nf";
    case Method::macaulay: return "macaulay";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::gb, Method::rur, Method::mep, Method::nf, Method::macaulay}) {
    if (to_string(m) == name) return m;
  }
  if (name == "mac") return Method::macaulay;
  throw InvalidArgument("unknown method '" + name + "'");
}

ConditionReport ConditionReport::make(std::string tag, double kroot, double ksub) {
  ConditionReport r;
  r.method_tag = std::move(tag);
  r.kappa_root = kroot;
  r.kappa_sub = ksub;
  r.ratio = ksub / kroot;
  return r;
}

double kappa_root(const PolySystem& s, std::span<const cplx> x) {
  const CMatrix J = jacobian(s, x);
  const Eigen::VectorXd sv = singular_values(J);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-15 * sv(0)) || !std::isfinite(smin)) throw SingularJacobian("Jacobian is singular at the root");
  return 1.0 / smin;
}

double kappa_uni(const UniPoly& p, cplx x) {
  const cplx dp = p.derivative().eval(x);
  if (dp == 0.0) throw SingularJacobian("derivative vanishes at the root");
  return 1.0 / std::abs(dp);
}

double kappa_eig(const CVector& left, const CVector& right, const CMatrix& B, cplx lambda) {
  const double denom = std::abs((left.transpose() * B * right)(0, 0));
  if (denom == 0.0) throw EigenvectorDegenerate("left and right eigenvectors are B-orthogonal");
  return left.norm() * right.norm() / denom * (1.0 + std::abs(lambda));
}

double kappa_eig(const GenEigProblem& gep, const EigTriple& t) {
  if (t.infinite) throw EigenvectorDegenerate("condition number requested for an infinite eigenvalue");
  return kappa_eig(t.left, t.right, gep.B, t.lambda);
}

MepNullData mep_null_data(const MultiParamEig& mep, std::span<const cplx> x) {
  mep.validate();
  MepNullData nd;
  for (int i = 0; i < mep.d; ++i) {
    const SvdResult sv = svd(mep.W(i, x));
    const Eigen::Index n = sv.V.cols();
    nd.v.push_back(sv.V.col(n - 1));
    nd.u.push_back(sv.U.col(n - 1).conjugate());
    double prod = 1.0;
    for (Eigen::Index k = 0; k + 1 < n; ++k) prod *= sv.singular_values(k);
    nd.nonzero_sv_product.push_back(prod);
    nd.d_scale.push_back(-sv.U.determinant() * std::conj(sv.V.determinant()) * prod);
  }
  return nd;
}

CMatrix b0_matrix(const MultiParamEig& mep, const MepNullData& nd) {
  CMatrix B0(mep.d, mep.d);
  for (int i = 0; i < mep.d; ++i) {
    for (int j = 0; j < mep.d; ++j) {
      const auto& Vij = mep.V[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)];
      B0(i, j) = (nd.u[static_cast<std::size_t>(i)].transpose() * Vij * nd.v[static_cast<std::size_t>(i)])(0, 0);
    }
  }
  return B0;
}

CMatrix b0_matrix(const MultiParamEig& mep, std::span<const cplx> x) { return b0_matrix(mep, mep_null_data(mep, x)); }

double kappa_eig_mep_formula(const MultiParamEig& mep, const PolySystem& s, std::span<const cplx> x, int i) {
  const MepNullData nd = mep_null_data(mep, x);
  const double detJ = std::abs(jacobian(s, x).determinant());
  if (detJ == 0.0) throw SingularJacobian("Jacobian is singular at the root");
  const double prod = std::accumulate(nd.nonzero_sv_product.begin(), nd.nonzero_sv_product.end(), 1.0,
                                      std::multiplies<>());
  return prod / detJ * (1.0 + std::abs(x[static_cast<std::size_t>(i)]));
}

std::vector<MultiPoly> QFactorization::reconstruct() const {
  const int n = d();
  std::vector<MultiPoly> out;
  for (int i = 0; i < n; ++i) {
    MultiPoly p(n);
    for (int j = 0; j < n; ++j) {
      const MultiPoly lin = MultiPoly::variable(n, j) - MultiPoly::constant(n, shift[static_cast<std::size_t>(j)]);
      p = p + Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * lin;
    }
    out.push_back(p);
  }
  return out;
}

QFactorization q_factorization(const PolySystem& s, std::span<const cplx> x) {
  s.validate();
  const int d = s.d;
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("root dimension differs from the system");
  Point neg(x.begin(), x.end());
  for (auto& v : neg) v = -v;

  QFactorization qf;
  qf.shift.assign(x.begin(), x.end());
  qf.Q.assign(static_cast<std::size_t>(d), std::vector<MultiPoly>(static_cast<std::size_t>(d), MultiPoly(d)));
  for (int i = 0; i < d; ++i) {
    const MultiPoly& p = s.polys[static_cast<std::size_t>(i)];
    const MultiPoly local = p.translate(neg);
    const cplx c0 = local.coeff(Monomial::one(d));
    if (std::abs(c0) > 1e-10 * (1.0 + p.max_abs_coeff())) throw NotARoot("point is not a root of p_" + std::to_string(i + 1));
    std::vector<MultiPoly::TermMap> cols(static_cast<std::size_t>(d));
    for (const auto& [m, c] : local.terms()) {
      if (m.degree() == 0) continue;
      int j = 0;
      while (m.exps[static_cast<std::size_t>(j)] == 0) ++j;
      Monomial q = m;
      --q.exps[static_cast<std::size_t>(j)];
      cols[static_cast<std::size_t>(j)][q] += c;
    }
    for (int j = 0; j < d; ++j) {
      qf.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          MultiPoly(d, std::move(cols[static_cast<std::size_t>(j)])).translate(x);
    }
  }
  return qf;
}

MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& M) {
  const auto n = static_cast<int>(M.size());
  if (n == 0) throw InvalidArgument("determinant of an empty matrix needs an explicit variable count");
  const int nv = M[0][0].nvars();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly det(nv);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
    }
    MultiPoly term = MultiPoly::constant(nv, inversions % 2 ? -1.0 : 1.0);
    for (int a = 0; a < n && !term.is_zero(); ++a) {
      term = term * M[static_cast<std::size_t>(a)][static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
    }
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

MultiPoly lagrange_interpolant(const QFactorization& qf, const std::vector<MultiPoly>& r) {
  const int d = qf.d();
  if (static_cast<int>(r.size()) != d) throw DimensionMismatch("need one r_k per equation");
  MultiPoly q(d);
  for (long long mask = 0; mask < (1LL << d); ++mask) {
    std::vector<int> keep;
    MultiPoly weight = MultiPoly::constant(d, 1.0);
    for (int k = 0; k < d; ++k) {
      if (mask >> k & 1) {
        weight = weight * r[static_cast<std::size_t>(k)];
      } else {
        keep.push_back(k);
      }
    }
    if (weight.is_zero()) continue;
    if (keep.empty()) {
      q = q + weight;
      continue;
    }
    std::vector<std::vector<MultiPoly>> minor;
    for (int a : keep) {
      std::vector<MultiPoly> row;
      for (int b : keep) row.push_back(qf.Q[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
      minor.push_back(std::move(row));
    }
    q = q + poly_determinant(minor) * weight;
  }
  return q;
}

MultiPoly lagrange_interpolant(const QFactorization& qf) {
  return lagrange_interpolant(qf, std::vector<MultiPoly>(static_cast<std::size_t>(qf.d()), MultiPoly(qf.d())));
}

CVector normal_form(const MultiPoly& f, const QuotientBasis& q) {
  if (q.basis_condition > 1e12) throw BasisSingular("basis rows of the null space are numerically singular");
  const auto idx = label_index(q.labels);
  CVector fv = CVector::Zero(static_cast<Eigen::Index>(q.labels.size()));
  for (const auto& [m, c] : f.terms()) {
    auto it = idx.find(m);
    if (it == idx.end()) throw InvalidArgument("polynomial degree exceeds the Macaulay degree");
    fv(it->second) = c;
  }
  const CMatrix NB = q.rows(q.basis);
  const CVector rhs = q.N.transpose() * fv;
  return NB.transpose().fullPivLu().solve(rhs);
}

double kappa_eig_ms_formula(const PolySystem& s, std::span<const cplx> x, const QuotientBasis& q, int i) {
  const MultiPoly detQ = poly_determinant(q_factorization(s, x).Q);
  const CVector c = normal_form(detQ, q);
  const double detJ = std::abs(jacobian(s, x).determinant());
  if (detJ == 0.0) throw SingularJacobian("Jacobian is singular at the root");
  return c.norm() * eval_labels(q.basis, x).norm() / detJ * (1.0 + std::abs(x[static_cast<std::size_t>(i)]));
}

double kappa_eig_macaulay_bound(const PolySystem& s, std::span<const cplx> x, const QuotientBasis& q,
                                const MultiPoly& h) {
  const MultiPoly detQ = poly_determinant(q_factorization(s, x).Q);
  const CVector c = normal_form(detQ, q);
  const double denom = std::abs(jacobian(s, x).determinant() * h.eval(x));
  if (denom == 0.0) throw SingularJacobian("Jacobian or h vanishes at the root");
  return c.norm() * eval_labels(q.labels, x).norm() / denom;
}

double digits_from_kappa(double kappa) {
  if (!(kappa > 0.0)) return 16.0;
  return std::clamp(-std::log10(kappa * kUnitRoundoff), 0.0, 16.0) + 0.0;
}

double stable_kappa(Family family, int d, double param) {
  if (family == Family::hypercube) return param * std::sqrt(static_cast<double>(d)) / 2.0;
  return 1.0 / param;
}

double theory_kappa(Method method, Family family, int d, double param) {
  const long long n = (1LL << d) - 1;
  switch (method) {
    case Method::gb:
      if (family != Family::cyclic_squares) throw InvalidArgument("elimination analysis covers cyclic_squares only");
      return pow_int(param, -n);
    case Method::rur:
      if (family != Family::hypercube) throw InvalidArgument("RUR analysis covers hypercube only");
      return pow_int(param / 2.0, n);
    case Method::mep:
    case Method::nf:
    case Method::macaulay:
      switch (family) {
        case Family::notdev2d:
        case Family::notdev3d:
          return pow_int(param, -2);
        case Family::hypercube:
          return pow_int(param * std::sqrt(static_cast<double>(d)) / 2.0, d);
        default:
          return pow_int(param, -d);
      }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double theory_digits(Method method, Family family, int d, double param) {
  return digits_from_kappa(theory_kappa(method, family, d, param));
}

double stable_digits(Family family, int d, double param) { return digits_from_kappa(stable_kappa(family, d, param)); }

}  // namespace polylab
