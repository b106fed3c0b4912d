#include "polylab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polylab/error.hpp"
#include "polylab/families.hpp"

namespace polylab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx rayleigh(const CVector& w, const CMatrix& M) { return w.dot(M * w) / w.squaredNorm(); }

/// Finite eigentriples; when their count differs from r, the r most finite ones.
std::vector<EigTriple> keep_finite(std::vector<EigTriple> eig, std::size_t r, Diagnostics& diag) {
  std::vector<EigTriple> finite;
  for (const auto& t : eig) {
    if (!t.infinite) finite.push_back(t);
  }
  if (finite.size() == r) return finite;
  diag.warnings.push_back("found " + std::to_string(finite.size()) + " finite eigenvalues, expected " +
                          std::to_string(r));
  auto finiteness = [](const EigTriple& t) { return std::abs(t.beta) / (std::abs(t.alpha) + std::abs(t.beta)); };
  std::stable_sort(eig.begin(), eig.end(),
                   [&](const EigTriple& a, const EigTriple& b) { return finiteness(a) > finiteness(b); });
  eig.resize(std::min(r, eig.size()));
  for (auto& t : eig) {
    t.infinite = false;
    t.lambda = t.alpha / t.beta;
  }
  return eig;
}

GenEigProblem standard_problem(const CMatrix& A) {
  GenEigProblem gep;
  gep.A = A;
  gep.B = CMatrix::Identity(A.rows(), A.cols());
  return gep;
}

void finish(RootReport& rep, const PolySystem& s, const SolveOptions& opts) {
  if (opts.polish) {
    for (auto& x : rep.roots) x = newton_polish(s, x);
  }
  rep.fill_metrics(s);
}

/// x_i of a Macaulay eigenvector read from the label ratios m x_i / m, deg m <= 1.
Point root_from_macaulay_vector(const CVector& z, std::span<const Monomial> labels, int d, Diagnostics& diag) {
  const auto idx = label_index(labels);
  const Monomial one = Monomial::one(d);
  const cplx z1 = z(idx.at(one));
  Point x(static_cast<std::size_t>(d));
  if (std::abs(z1) >= 1e-8 * z.norm()) {
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = z(idx.at(Monomial::var(d, i))) / z1;
    return x;
  }
  diag.warnings.push_back("eigenvector entry at 1 is negligible; using least squares over label ratios");
  std::vector<Monomial> base{one};
  for (int i = 0; i < d; ++i) base.push_back(Monomial::var(d, i));
  for (int i = 0; i < d; ++i) {
    cplx num = 0.0;
    double den = 0.0;
    for (const auto& m : base) {
      auto a = idx.find(m);
      auto b = idx.find(m.times_var(i));
      if (a == idx.end() || b == idx.end()) continue;
      num += std::conj(z(a->second)) * z(b->second);
      den += std::norm(z(a->second));
    }
    if (den == 0.0) throw EigenvectorDegenerate("Macaulay eigenvector vanishes on all low-degree labels");
    x[static_cast<std::size_t>(i)] = num / den;
  }
  return x;
}

UnivariateSolve finish_univariate(UniPoly poly, cplx target, bool balance) {
  UnivariateSolve out;
  out.roots = companion_roots(poly, balance);
  out.target = target;
  out.poly = std::move(poly);
  out.error = kInf;
  for (const cplx& r : out.roots) {
    if (std::abs(r - target) < out.error) {
      out.error = std::abs(r - target);
      out.estimate = r;
    }
  }
  const cplx dp = out.poly.derivative().eval(target);
  out.kappa_uni = dp == 0.0 ? kInf : 1.0 / std::abs(dp);
  return out;
}

}  // namespace

void RootReport::fill_metrics(const PolySystem& s) {
  residuals.clear();
  kappa_root.clear();
  for (const auto& x : roots) {
    residuals.push_back(s.residual(x));
    try {
      kappa_root.push_back(polylab::kappa_root(s, x));
    } catch (const SingularJacobian&) {
      kappa_root.push_back(kInf);
    }
  }
}

Point newton_polish(const PolySystem& s, Point x, int steps) {
  double res = s.residual(x);
  for (int k = 0; k < steps; ++k) {
    const CMatrix J = jacobian(s, x);
    const CVector f = s.eval(x);
    const CVector dx = J.fullPivLu().solve(f);
    if (!dx.allFinite()) break;
    Point y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= dx(static_cast<Eigen::Index>(i));
    const double r = s.residual(y);
    if (!(r <= res)) break;
    x = std::move(y);
    res = r;
  }
  return x;
}

MSMatrices build_ms_matrices(const PolySystem& s, const MonomialOrder& order) {
  MSMatrices out;
  out.quotient = quotient_basis(s, order);
  const auto& q = out.quotient;
  if (q.basis_condition > 1e12) throw BasisSingular("basis rows of the null space are numerically singular");
  const CMatrix NB = q.rows(q.basis);
  const auto lu = NB.transpose().fullPivLu();
  for (int i = 0; i < s.d; ++i) {
    std::vector<Monomial> shifted;
    for (const auto& b : q.basis) shifted.push_back(b.times_var(i));
    out.M.push_back(lu.solve(q.rows(shifted).transpose()));
  }
  return out;
}

RootReport solve_normal_form(const PolySystem& s, Rng& rng, const SolveOptions& opts) {
  const MSMatrices ms = build_ms_matrices(s, opts.order);
  RootReport rep;
  rep.method = "nf";
  rep.diagnostics.basis = ms.quotient.basis;
  rep.diagnostics.basis_condition = ms.quotient.basis_condition;
  rep.diagnostics.sigma_min_hat = ms.quotient.sigma_min_hat;
  rep.diagnostics.nullspace_gap = ms.quotient.nullspace_gap;

  const Eigen::VectorXd u = random_unit_vector(s.d, rng);
  CMatrix Mt = CMatrix::Zero(ms.M[0].rows(), ms.M[0].cols());
  for (int i = 0; i < s.d; ++i) Mt += u(i) * ms.M[static_cast<std::size_t>(i)];
  const auto eig = generalized_eig(standard_problem(Mt));
  const CMatrix I = CMatrix::Identity(Mt.rows(), Mt.cols());
  for (const auto& t : eig) {
    Point x(static_cast<std::size_t>(s.d));
    double kmax = 0.0;
    for (int i = 0; i < s.d; ++i) {
      x[static_cast<std::size_t>(i)] = rayleigh(t.right, ms.M[static_cast<std::size_t>(i)]);
      try {
        kmax = std::max(kmax, kappa_eig(t.left, t.right, I, x[static_cast<std::size_t>(i)]));
      } catch (const EigenvectorDegenerate&) {
        kmax = kInf;
      }
    }
    rep.roots.push_back(std::move(x));
    rep.subproblem_kappa.push_back(kmax);
  }
  finish(rep, s, opts);
  return rep;
}

GenEigProblem reduce_macaulay_pencil(const MacaulayPencil& pen) {
  const Eigen::Index n = pen.gep.size();
  const Eigen::Index p = pen.p_rows;
  const Eigen::Index r = n - p;
  CMatrix Z;
  if (p == 0 || pen.gep.A.topRows(p).isZero(0.0)) {
    Z = CMatrix::Identity(n, n);
  } else {
    Z = null_space(pen.gep.A.topRows(p), static_cast<int>(r)).basis;
  }
  GenEigProblem red;
  red.A = pen.gep.A.bottomRows(r) * Z;
  red.B = pen.gep.B.bottomRows(r) * Z;
  if (red.A.rows() != red.A.cols()) throw NullityMismatch("reduced Macaulay pencil is not square");
  red.row_labels = pen.kept_h_monomials;
  return red;
}

RootReport solve_macaulay_resultant(const PolySystem& s, Rng& rng, const SolveOptions& opts) {
  const MacaulayPencil pen = macaulay_pencil(s, rng, opts.order);
  RootReport rep;
  rep.method = "macaulay";
  rep.diagnostics.basis = pen.kept_h_monomials;
  rep.diagnostics.basis_condition = pen.quotient.basis_condition;
  rep.diagnostics.sigma_min_hat = pen.quotient.sigma_min_hat;
  rep.diagnostics.nullspace_gap = pen.quotient.nullspace_gap;
  rep.diagnostics.dropped_h_rows = pen.dropped_h_monomials;

  const auto finite = keep_finite(generalized_eig(pen.gep), pen.kept_h_monomials.size(), rep.diagnostics);
  for (const auto& t : finite) {
    rep.roots.push_back(root_from_macaulay_vector(t.right, pen.gep.col_labels, s.d, rep.diagnostics));
    try {
      rep.subproblem_kappa.push_back(kappa_eig(pen.gep, t));
    } catch (const EigenvectorDegenerate&) {
      rep.subproblem_kappa.push_back(kInf);
    }
  }
  finish(rep, s, opts);
  return rep;
}

RootReport solve_mep_operator_determinants(const MultiParamEig& mep, Rng& rng) {
  const OperatorDeterminants od = operator_determinants(mep);
  const Eigen::VectorXd sv = singular_values(od.delta0);
  if (!(sv(sv.size() - 1) > 1e-13 * sv(0))) throw SingularDelta0("Delta_0 is numerically singular");

  const Eigen::VectorXd u = random_unit_vector(mep.d, rng);
  GenEigProblem gep;
  gep.A = CMatrix::Zero(od.delta0.rows(), od.delta0.cols());
  for (int i = 0; i < mep.d; ++i) gep.A += u(i) * od.delta[static_cast<std::size_t>(i)];
  gep.B = od.delta0;

  RootReport rep;
  rep.method = "mep";
  for (const auto& t : generalized_eig(gep)) {
    if (t.infinite) {
      rep.diagnostics.warnings.push_back("infinite eigenvalue despite nonsingular Delta_0");
      continue;
    }
    const cplx den = (t.left.transpose() * od.delta0 * t.right)(0, 0);
    Point x(static_cast<std::size_t>(mep.d));
    double kmax = 0.0;
    for (int i = 0; i < mep.d; ++i) {
      const cplx num = (t.left.transpose() * od.delta[static_cast<std::size_t>(i)] * t.right)(0, 0);
      x[static_cast<std::size_t>(i)] = num / den;
      try {
        kmax = std::max(kmax, kappa_eig(t.left, t.right, od.delta0, x[static_cast<std::size_t>(i)]));
      } catch (const EigenvectorDegenerate&) {
        kmax = kInf;
      }
    }
    double res = 0.0;
    for (int i = 0; i < mep.d; ++i) res += std::norm(mep.W(i, x).determinant());
    rep.roots.push_back(std::move(x));
    rep.subproblem_kappa.push_back(kmax);
    rep.residuals.push_back(std::sqrt(res));
  }
  return rep;
}

RootReport solve_mep_operator_determinants(const PolySystem& s, Rng& rng, const SolveOptions& opts) {
  RootReport rep = solve_mep_operator_determinants(mep_from_system(s), rng);
  finish(rep, s, opts);
  return rep;
}

UnivariateSolve solve_gb_elimination_example(int d, double sigma, int i, double shift) {
  if (d < 1 || d > 20) throw InvalidArgument("elimination example supports 1 <= d <= 20");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (i < 0 || i >= d) throw InvalidArgument("coordinate index out of range");
  const long long n = 1LL << d;
  const double a = std::pow(sigma, static_cast<double>(n - 1));
  if (!std::isfinite(a)) throw InvalidArgument("sigma^(2^d-1) overflows");
  std::vector<cplx> c(static_cast<std::size_t>(n + 1), 0.0);
  c[1] = -a;
  c[static_cast<std::size_t>(n)] = 1.0;
  UniPoly g(std::move(c));
  if (shift != 0.0) g = g.translate(shift);
  UnivariateSolve out = finish_univariate(std::move(g), shift, true);
  if (a == 0.0) out.warnings.push_back("sigma^(2^d-1) underflows to zero");
  return out;
}

UnivariateSolve solve_rur(const PolySystem& s, std::span<const double> u, RurMode mode, Rng& rng, bool balance,
                          int max_d) {
  if (s.d > max_d) throw InvalidArgument("RUR degree 2^d exceeds the configured cap");
  if (static_cast<int>(u.size()) != s.d) throw DimensionMismatch("projection length differs from d");
  if (!s.true_roots || s.true_roots->empty()) throw InvalidArgument("RUR needs the system's known roots");
  double norm2 = 0.0;
  for (double v : u) norm2 += v * v;
  if (norm2 > 1.0 + 1e-12) throw InvalidArgument("projection must satisfy |u| <= 1");

  auto project = [&](std::span<const cplx> x) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) t += u[i] * x[i];
    return t;
  };
  std::vector<cplx> ts;
  if (mode == RurMode::exact_roots) {
    for (const auto& x : *s.true_roots) ts.push_back(project(x));
  } else {
    SolveOptions opts;
    opts.polish = true;
    for (const auto& x : solve_normal_form(s, rng, opts).roots) ts.push_back(project(x));
  }
  int collisions = 0;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = a + 1; b < ts.size(); ++b) collisions += std::abs(ts[a] - ts[b]) < 1e-10;
  }
  UnivariateSolve out = finish_univariate(UniPoly::from_roots(ts), project((*s.true_roots)[0]), balance);
  if (collisions > 0) {
    out.warnings.push_back("projection does not separate the roots (" + std::to_string(collisions) +
                           " coincident pairs)");
  }
  return out;
}

UnivariateSolve solve_rur_example(int d, double c, std::span<const double> u, RurMode mode, Rng& rng, bool balance,
                                  int max_d) {
  if (d > max_d) throw InvalidArgument("RUR degree 2^d exceeds the configured cap");
  FamilySpec spec;
  spec.family = Family::hypercube;
  spec.d = d;
  spec.param = c;
  spec.randomize = false;
  return solve_rur(generate(spec, rng), u, mode, rng, balance, max_d);
}

RootReport solve(const PolySystem& s, Method method, Rng& rng, const SolveOptions& opts) {
  switch (method) {
    case Method::nf: return solve_normal_form(s, rng, opts);
    case Method::macaulay: return solve_macaulay_resultant(s, rng, opts);
    case Method::mep: return solve_mep_operator_determinants(s, rng, opts);
    case Method::gb: {
      if (s.family_tag != "cyclic_squares" || !s.family_params.contains("sigma") || !s.true_roots) {
        throw UnsupportedShape("elimination solver needs a cyclic_squares system");
      }
      const double sigma = s.family_params.at("sigma");
      const Point base = s.true_roots->front();
      if (base[0].imag() != 0.0) throw UnsupportedShape("elimination solver needs a real shift");
      const UnivariateSolve shifted = solve_gb_elimination_example(s.d, sigma, 0, base[0].real());
      RootReport rep;
      rep.method = "gb";
      // back-substitution along x_{i+1} = x_i^2 / sigma
      for (const cplx& r : shifted.roots) {
        Point x(static_cast<std::size_t>(s.d));
        x[0] = r;
        for (int i = 1; i < s.d; ++i) {
          const cplx prev = x[static_cast<std::size_t>(i - 1)] - base[static_cast<std::size_t>(i - 1)];
          x[static_cast<std::size_t>(i)] = prev * prev / sigma + base[static_cast<std::size_t>(i)];
        }
        rep.roots.push_back(std::move(x));
        const cplx dp = shifted.poly.derivative().eval(r);
        rep.subproblem_kappa.push_back(dp == 0.0 ? kInf : 1.0 / std::abs(dp));
      }
      finish(rep, s, opts);
      return rep;
    }
    case Method::rur: {
      const Eigen::VectorXd u = random_unit_vector(s.d, rng);
      const UnivariateSolve f = solve_rur(s, std::span<const double>(u.data(), static_cast<std::size_t>(u.size())),
                                          RurMode::exact_roots, rng);
      RootReport rep;
      rep.method = "rur";
      for (const cplx& t : f.roots) {
        rep.roots.push_back(Point{t});
        const cplx dp = f.poly.derivative().eval(t);
        rep.subproblem_kappa.push_back(dp == 0.0 ? kInf : 1.0 / std::abs(dp));
      }
      rep.diagnostics.warnings = f.warnings;
      rep.diagnostics.warnings.push_back("roots are values of the separating form u.x");
      return rep;
    }
  }
  throw InvalidArgument("unknown method");
}

}  // namespace polylab

namespace polylab {

std::vector<ConditionReport> audit_root(const PolySystem& s, std::span<const cplx> x, Rng& rng) {
  const double kroot = kappa_root(s, x);
  const int d = s.d;
  const auto param = [&](const char* key) {
    auto it = s.family_params.find(key);
    return it == s.family_params.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
  };
  const double sigma = param("sigma");
  const std::string& fam = s.family_tag;
  const bool devastating = fam == "orthogonal" || fam == "permutation";
  std::vector<ConditionReport> out;

  if (fam == "cyclic_squares" && s.true_roots && !std::isnan(sigma)) {
    const cplx base = s.true_roots->front()[0];
    const long long n = 1LL << d;
    std::vector<cplx> c(static_cast<std::size_t>(n + 1), 0.0);
    c[1] = -std::pow(sigma, static_cast<double>(n - 1));
    c[static_cast<std::size_t>(n)] = 1.0;
    const UniPoly g = UniPoly(std::move(c)).translate(base);
    auto r = ConditionReport::make("gb", kroot, kappa_uni(g, x[0]));
    if (std::abs(x[0] - base) < 1e-12) r.predicted_ratio = std::pow(sigma, static_cast<double>(-n + 2));
    out.push_back(r);
  }
  if (s.true_roots && d <= 10) {
    try {
      const Eigen::VectorXd u = random_unit_vector(d, rng);
      std::vector<cplx> ts;
      for (const auto& r : *s.true_roots) {
        cplx t = 0.0;
        for (int i = 0; i < d; ++i) t += u(i) * r[static_cast<std::size_t>(i)];
        ts.push_back(t);
      }
      if (static_cast<long long>(ts.size()) == bezout_count(s)) {
        cplx tx = 0.0;
        for (int i = 0; i < d; ++i) tx += u(i) * x[static_cast<std::size_t>(i)];
        auto r = ConditionReport::make("rur", kroot, kappa_uni(UniPoly::from_roots(ts), tx));
        if (fam == "hypercube") {
          r.predicted_ratio = std::pow(param("c") / 2.0, static_cast<double>((1LL << d) - 2)) / std::sqrt(d);
          r.note = "predicted ratio is a lower bound";
        }
        out.push_back(r);
      }
    } catch (const Error& e) {
      out.push_back(ConditionReport::make("rur", kroot, std::numeric_limits<double>::quiet_NaN()));
      out.back().note = e.what();
    }
  }
  const double predicted = devastating ? std::pow(sigma, static_cast<double>(1 - d)) : std::numeric_limits<double>::quiet_NaN();
  try {
    const MultiParamEig mep = mep_from_system(s);
    double k = 0.0;
    for (int i = 0; i < d; ++i) k = std::max(k, kappa_eig_mep_formula(mep, s, x, i));
    auto r = ConditionReport::make("mep", kroot, k);
    r.predicted_ratio = predicted;
    out.push_back(r);
  } catch (const UnsupportedShape&) {
  }
  try {
    const QuotientBasis q = quotient_basis(s);
    double k = 0.0;
    for (int i = 0; i < d; ++i) k = std::max(k, kappa_eig_ms_formula(s, x, q, i));
    auto nf = ConditionReport::make("nf", kroot, k);
    nf.predicted_ratio = predicted;
    out.push_back(nf);

    const MacaulayPencil pen = macaulay_pencil(s, rng);
    const MultiPoly h = pen.h_beta();
    auto mac = ConditionReport::make("macaulay", kroot, kappa_eig_macaulay_bound(s, x, pen.quotient, h));
    mac.predicted_ratio = predicted / std::abs(h.eval(x));
    mac.note = "bound with h the beta part of the random linear form";
    out.push_back(mac);
  } catch (const Error& e) {
    auto r = ConditionReport::make("nf", kroot, std::numeric_limits<double>::quiet_NaN());
    r.note = e.what();
    out.push_back(r);
  }
  return out;
}

}  // namespace polylab
