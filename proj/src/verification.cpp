#include "polylab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polylab/conditioning.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/macaulay.hpp"
#include "polylab/solvers.hpp"

namespace polylab {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sum of |c| |m(x)| over the terms of p.
double magnitude_at(const MultiPoly& p, std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) s += std::abs(c) * std::abs(m.eval(x));
  return s;
}

MultiPoly poly_from(int d, std::initializer_list<std::pair<std::vector<int>, cplx>> terms) {
  MultiPoly::TermMap t;
  for (const auto& [e, c] : terms) t[Monomial(e)] += c;
  return MultiPoly(d, std::move(t));
}

double coefficient_distance(const MultiPoly& a, const MultiPoly& b) {
  double m = 0.0;
  for (const auto& [mono, c] : (a - b).terms()) m = std::max(m, std::abs(c));
  return m;
}

std::vector<Monomial> monos(int d, std::initializer_list<std::vector<int>> list) {
  std::vector<Monomial> out;
  for (const auto& e : list) out.emplace_back(e);
  (void)d;
  return out;
}

/// Roots of a generic system via the normal form solver with polishing.
std::vector<Point> reference_roots(const PolySystem& s, Rng& rng) {
  SolveOptions opts;
  opts.polish = true;
  return solve_normal_form(s, rng, opts).roots;
}

}  // namespace

void SuiteReport::check(bool ok, const std::string& what) {
  if (!ok) {
    pass = false;
    failures.push_back(what);
  }
}

void SuiteReport::merge(const SuiteReport& other, const std::string& prefix) {
  pass = pass && other.pass;
  for (const auto& [k, v] : other.stats) stats[prefix + k] = v;
  for (const auto& f : other.failures) failures.push_back(prefix + f);
}

double subset_sum_product(std::span<const double> u) {
  const auto d = static_cast<int>(u.size());
  double f = 1.0;
  for (long long mask = 1; mask < (1LL << d); ++mask) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      if (mask >> i & 1) s += std::abs(u[static_cast<std::size_t>(i)]);
    }
    f *= s;
  }
  return f;
}

double subset_sum_product_at_center(int d) {
  double f = 1.0;
  for (int m = 1; m <= d; ++m) f *= std::pow(m / std::sqrt(static_cast<double>(d)), binomial(d, m));
  return f;
}

SuiteReport lemma_a1_suite(int d, int n_samples, Rng& rng) {
  if (d < 1 || d > 10) throw InvalidArgument("lemma suite supports 1 <= d <= 10");
  SuiteReport rep;
  rep.suite = "lemmaA1";
  const std::vector<double> u0(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
  const double f0 = subset_sum_product(u0);
  const double closed = subset_sum_product_at_center(d);
  const double bound = std::pow(std::sqrt(static_cast<double>(d)), static_cast<double>((1LL << d) - 1));
  double fmax = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const Eigen::VectorXd u = random_unit_vector(d, rng);
    fmax = std::max(fmax, subset_sum_product(std::span<const double>(u.data(), static_cast<std::size_t>(d))));
  }
  rep.stats["d"] = d;
  rep.stats["samples"] = n_samples;
  rep.stats["f_u0"] = f0;
  rep.stats["f_u0_closed_form"] = closed;
  rep.stats["bound"] = bound;
  rep.stats["max_sample"] = fmax;
  rep.check(std::abs(f0 - closed) <= 1e-12 * closed, "closed form differs from direct product at u0");
  rep.check(closed <= bound * (1 + 1e-12), "f(u0) exceeds (sqrt d)^(2^d-1)");
  rep.check(fmax <= f0 * (1 + 1e-12), "a random unit vector exceeds f(u0): " + num(fmax) + " > " + num(f0));
  return rep;
}

SuiteReport singular_derivative_suite(const MultiParamEig& mep, std::span<const cplx> x,
                                      const std::vector<double>& h_steps) {
  if (h_steps.size() != 2) throw InvalidArgument("derivative suite takes two step sizes");
  SuiteReport rep;
  rep.suite = "singular_derivative";
  const CMatrix B0 = b0_matrix(mep, x);
  const double h = h_steps[0];
  const double ratio = h_steps[0] / h_steps[1];
  auto smin_at = [&](int i, int j, double step) {
    Point y(x.begin(), x.end());
    y[static_cast<std::size_t>(j)] += step;
    return sigma_min(mep.W(i, y));
  };
  auto central = [&](int i, int j, double step) { return (smin_at(i, j, step) + smin_at(i, j, -step)) / (2 * step); };
  double worst = 0.0;
  for (int i = 0; i < mep.d; ++i) {
    for (int j = 0; j < mep.d; ++j) {
      const double coarse = central(i, j, h);
      const double fine = central(i, j, h / ratio);
      const double extrap = (ratio * fine - coarse) / (ratio - 1);
      const double target = std::abs(B0(i, j));
      const double err = std::abs(extrap - target) / std::max(1.0, target);
      worst = std::max(worst, err);
      rep.check(err <= 1e-5, "d sigma_min(W_" + std::to_string(i + 1) + ")/dx_" + std::to_string(j + 1) +
                                 " = " + num(extrap) + " but |B0| = " + num(target));
    }
  }
  rep.stats["max_derivative_error"] = worst;
  return rep;
}

SuiteReport prop51_suite(Rng& rng) {
  SuiteReport rep;
  rep.suite = "prop51";
  double worst_identity = 0.0;
  double worst_derivative = 0.0;
  for (int d : {2, 3, 4}) {
    for (double sigma : {1e-1, 1e-2}) {
      for (double shift : {0.0, 1.0 / 3.0}) {
        FamilySpec spec;
        spec.family = Family::permutation;
        spec.d = d;
        spec.param = sigma;
        if (shift != 0.0) spec.shift = Point(static_cast<std::size_t>(d), shift);
        const PolySystem s = generate(spec, rng);
        const MultiParamEig mep = mep_from_system(s);
        const Point x = designated_root(spec);
        const MepNullData nd = mep_null_data(mep, x);
        CMatrix D = CMatrix::Zero(d, d);
        for (int i = 0; i < d; ++i) D(i, i) = nd.d_scale[static_cast<std::size_t>(i)];
        const CMatrix J = jacobian(s, x);
        const double rel = norm2(D * b0_matrix(mep, nd) - J) / norm2(J);
        worst_identity = std::max(worst_identity, rel);
        const std::string tag = "d=" + std::to_string(d) + " sigma=" + num(sigma) + " shift=" + num(shift) + ": ";
        rep.check(rel <= 1e-8, tag + "||D B0 - J|| / ||J|| = " + num(rel));
        const SuiteReport der = singular_derivative_suite(mep, x);
        worst_derivative = std::max(worst_derivative, der.stats.at("max_derivative_error"));
        for (const auto& f : der.failures) rep.check(false, tag + f);
      }
    }
  }
  rep.stats["max_identity_error"] = worst_identity;
  rep.stats["max_derivative_error"] = worst_derivative;
  return rep;
}

double principal_angle_sine(const CMatrix& A, const CMatrix& B) {
  const CMatrix P = B - A * (A.adjoint() * B);
  return P.size() == 0 ? 0.0 : std::min(1.0, norm2(P));
}

SuiteReport nullspace_perturbation_suite(const CMatrix& M, int nullity, const std::vector<double>& eps_list, Rng& rng,
                                         int draws) {
  SuiteReport rep;
  rep.suite = "nullspace_perturbation";
  const Eigen::VectorXd sv = singular_values(M);
  const Eigen::Index rank = M.cols() - nullity;
  if (rank < 1 || rank > sv.size()) throw InvalidArgument("nullity incompatible with the matrix shape");
  const double smin = sv(rank - 1);
  const CMatrix N0 = null_space(M, nullity).basis;
  rep.stats["sigma_min"] = smin;
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    const double eps = eps_list[k];
    std::vector<double> ratios;
    double worst = 0.0;
    for (int t = 0; t < draws; ++t) {
      CMatrix E(M.rows(), M.cols());
      for (Eigen::Index j = 0; j < E.cols(); ++j) {
        for (Eigen::Index i = 0; i < E.rows(); ++i) E(i, j) = rng.complex_normal();
      }
      E *= eps / norm2(E);
      const double gap = principal_angle_sine(N0, null_space(M + E, nullity).basis);
      worst = std::max(worst, gap);
      if (eps > 0) ratios.push_back(gap / (eps / smin));
    }
    const std::string key = "eps[" + std::to_string(k) + "]";
    rep.stats[key + ".eps"] = eps;
    rep.stats[key + ".max_gap"] = worst;
    if (eps == 0.0) {
      rep.check(worst <= 1e-12, key + ": unperturbed null space moved by " + num(worst));
      continue;
    }
    const double med = median(ratios);
    rep.stats[key + ".median_ratio"] = med;
    rep.check(worst <= 2.0 * eps / smin, key + ": largest gap " + num(worst) + " exceeds 2 eps / sigma_min");
    rep.check(med >= 0.3 && med <= 2.0, key + ": median gap / (eps / sigma_min) = " + num(med) + " outside [0.3, 2]");
  }
  return rep;
}

SuiteReport appendix_d_suite(Rng& rng) {
  SuiteReport rep;
  rep.suite = "appendixD";
  CMatrix D = CMatrix::Zero(3, 3);
  D(0, 0) = 1.0;
  D(1, 1) = 1e-3;
  rep.merge(nullspace_perturbation_suite(D, 1, {0.0, 1e-8}, rng), "diag.");

  FamilySpec spec;
  spec.family = Family::notdev2d;
  spec.param = 1e-2;
  const PolySystem s = generate(spec, rng);
  const MacaulayMatrix hat = macaulay_hat(s, rho(s));
  const int r = static_cast<int>(bezout_count(s));
  const Eigen::VectorXd sv = singular_values(hat.mat);
  const double smin = sv(hat.mat.cols() - r - 1);
  rep.merge(nullspace_perturbation_suite(hat.mat, r, {1e-4 * smin}, rng), "macaulay.");
  return rep;
}

SuiteReport interpolant_suite(Rng& rng, int n_systems) {
  SuiteReport rep;
  rep.suite = "interpolant";

  {
    PolySystem s;
    s.d = 1;
    s.polys.push_back(poly_from(1, {{{2}, 1.0}, {{0}, -1.0}}));
    const Point x{1.0};
    const MultiPoly q = lagrange_interpolant(q_factorization(s, x));
    const MultiPoly expect = poly_from(1, {{{1}, 1.0}, {{0}, 1.0}});
    rep.check(coefficient_distance(q, expect) <= 1e-14, "univariate interpolant of x^2 - 1 at 1 is not x + 1");
  }

  double worst_recon = 0, worst_det = 0, worst_vanish = 0, worst_subset = 0, min_at_root = kInfinity;
  double worst_prop82 = kInfinity;
  for (int k = 0; k < n_systems; ++k) {
    PolySystem s = random_dense_system(2, 2, rng);
    double scale = 0.0;
    for (const auto& p : s.polys) scale = std::max(scale, p.max_abs_coeff());
    for (auto& p : s.polys) p = p.scaled(1.0 / scale);
    std::vector<Point> roots;
    try {
      roots = reference_roots(s, rng);
    } catch (const Error& e) {
      rep.check(false, "random system " + std::to_string(k) + ": " + e.what());
      continue;
    }
    for (std::size_t a = 0; a < roots.size(); ++a) {
      QFactorization qf;
      try {
        qf = q_factorization(s, roots[a]);
      } catch (const NotARoot&) {
        rep.check(false, "random system " + std::to_string(k) + ": computed root failed the residual test");
        continue;
      }
      const auto rec = qf.reconstruct();
      for (int i = 0; i < 2; ++i) worst_recon = std::max(worst_recon, coefficient_distance(rec[static_cast<std::size_t>(i)], s.polys[static_cast<std::size_t>(i)]));
      const MultiPoly detQ = poly_determinant(qf.Q);
      const cplx detJ = jacobian(s, roots[a]).determinant();
      worst_det = std::max(worst_det, std::abs(detQ.eval(roots[a]) - detJ) / std::abs(detJ));

      const MultiPoly q = lagrange_interpolant(qf);
      min_at_root = std::min(min_at_root, std::abs(q.eval(roots[a])) / magnitude_at(q, roots[a]));
      for (std::size_t b = 0; b < roots.size(); ++b) {
        if (b != a) worst_vanish = std::max(worst_vanish, std::abs(q.eval(roots[b])) / magnitude_at(q, roots[b]));
      }

      std::vector<MultiPoly> r;
      QFactorization shifted = qf;
      for (int i = 0; i < 2; ++i) {
        MultiPoly ri = MultiPoly::constant(2, rng.complex_normal()) + MultiPoly::variable(2, 0).scaled(rng.complex_normal());
        shifted.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = qf.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] - ri;
        r.push_back(std::move(ri));
      }
      worst_subset = std::max(worst_subset, coefficient_distance(lagrange_interpolant(shifted, r), detQ) /
                                                std::max(1.0, detQ.max_abs_coeff()));
    }

    // Same system with its constant terms dropped, so the origin is a root.
    PolySystem s0 = s;
    double scale0 = 0.0;
    for (auto& p : s0.polys) {
      p = p - MultiPoly::constant(2, p.coeff(Monomial::one(2)));
      scale0 = std::max(scale0, p.max_abs_coeff());
    }
    for (auto& p : s0.polys) p = p.scaled(1.0 / scale0);
    const Point origin(2, 0.0);
    try {
      const QuotientBasis qb0 = quotient_basis(s0);
      const MultiPoly detQ0 = poly_determinant(q_factorization(s0, origin).Q);
      worst_prop82 = std::min(worst_prop82, normal_form(detQ0, qb0).norm() - qb0.sigma_min_hat);
    } catch (const Error& e) {
      rep.check(false, "origin-rooted system " + std::to_string(k) + ": " + e.what());
    }
  }
  rep.stats["max_reconstruction_error"] = worst_recon;
  rep.stats["max_detQ_vs_detJ"] = worst_det;
  rep.stats["max_relative_value_at_other_roots"] = worst_vanish;
  rep.stats["min_relative_value_at_root"] = min_at_root;
  rep.stats["max_subset_expansion_error"] = worst_subset;
  rep.stats["min_prop82_margin"] = worst_prop82;
  rep.check(worst_recon <= 1e-12, "Q (x - x*) differs from p by " + num(worst_recon));
  rep.check(worst_det <= 1e-10, "det Q(x*) differs from det J(x*) by " + num(worst_det) + " relative");
  rep.check(worst_vanish <= 1e-9, "interpolant reaches " + num(worst_vanish) + " at another root");
  rep.check(min_at_root >= 1e-6, "interpolant nearly vanishes at its own root: " + num(min_at_root));
  rep.check(worst_subset <= 1e-12, "subset expansion with nonzero r differs from det Q by " + num(worst_subset));
  rep.check(worst_prop82 >= -1e-10, "||[det Q]_B|| < sigma_min(M_rho) by " + num(-worst_prop82));

  // Bivariate example with basis {1, x, y, y^2}.
  double lo = kInfinity, hi = 0.0, worst_printed = 0.0;
  for (double sigma : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    FamilySpec spec;
    spec.family = Family::notdev2d;
    spec.param = sigma;
    Rng local = rng.split(static_cast<std::uint64_t>(-std::log10(sigma)));
    const PolySystem s = generate(spec, local);
    const CMatrix J = jacobian(s, designated_root(spec));
    const cplx a11 = J(0, 0) / sigma, a12 = J(0, 1) / sigma, a21 = J(1, 0) / sigma, a22 = J(1, 1) / sigma;
    const auto basis = monos(2, {{0, 0}, {1, 0}, {0, 1}, {0, 2}});
    const QuotientBasis qb = quotient_basis(s, {}, basis);
    const CVector c = normal_form(poly_determinant(q_factorization(s, designated_root(spec)).Q), qb);
    CVector printed(4);
    printed << J.determinant(), sigma * a22 - sigma * sigma * a21, -sigma * a12 + sigma * sigma * (a11 - a22), -sigma * sigma;
    worst_printed = std::max(worst_printed, (c - printed).norm() / printed.norm());
    lo = std::min(lo, c.norm() / sigma);
    hi = std::max(hi, c.norm() / sigma);
  }
  rep.stats["bivariate_norm_over_sigma_min"] = lo;
  rep.stats["bivariate_norm_over_sigma_max"] = hi;
  rep.stats["bivariate_printed_relative_error"] = worst_printed;
  rep.check(lo >= 0.1 && hi <= 10.0, "||[det Q]_B|| / sigma outside [0.1, 10]: [" + num(lo) + ", " + num(hi) + "]");
  rep.check(worst_printed <= 1e-6, "bivariate normal form differs from the printed reduction by " + num(worst_printed));

  // Trivariate example with basis {1, x, y, z, yz, xz, y^2 z, xyz}.
  double worst3 = 0.0;
  for (double sigma : {1e-1, 1e-2}) {
    FamilySpec spec;
    spec.family = Family::notdev3d;
    spec.d = 3;
    spec.param = sigma;
    const PolySystem s = generate(spec, rng);
    const auto basis = monos(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {0, 2, 1}, {1, 1, 1}});
    const QuotientBasis qb = quotient_basis(s, {}, basis);
    const CVector c = normal_form(poly_determinant(q_factorization(s, designated_root(spec)).Q), qb);
    const double s2 = sigma * sigma, s3 = s2 * sigma;
    CVector printed(8);
    printed << s3, 0, s2, 0, -s2, 0, s2, s3;
    worst3 = std::max(worst3, (c - printed).norm() / printed.norm());
  }
  rep.stats["trivariate_printed_relative_error"] = worst3;
  rep.check(worst3 <= 1e-10, "trivariate normal form differs from the printed interpolant by " + num(worst3));
  return rep;
}

double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : kInfinity;
  auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = kInfinity;
      for (const auto& y : to) best = std::min(best, distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

SuiteReport crossmethod_suite(Rng& rng, int n_systems) {
  SuiteReport rep;
  rep.suite = "crossmethod";
  double worst_res = 0.0, worst_dist = 0.0;
  int count_mismatch = 0;
  for (int k = 0; k < n_systems; ++k) {
    const int d = 2 + k % 2;
    for (bool square : {false, true}) {
      const PolySystem s = square ? random_square_system(d, rng) : random_dense_system(d, 2, rng);
      const std::string tag = (square ? "square" : "dense") + std::string(" d=") + std::to_string(d) + " #" +
                              std::to_string(k) + ": ";
      try {
        std::vector<RootReport> reports{solve_normal_form(s, rng), solve_macaulay_resultant(s, rng)};
        if (square) reports.push_back(solve_mep_operator_determinants(s, rng));
        const double scale = s.coefficient_scale();
        for (const auto& r : reports) {
          if (static_cast<long long>(r.roots.size()) != bezout_count(s)) {
            ++count_mismatch;
            rep.check(false, tag + r.method + " returned " + std::to_string(r.roots.size()) + " roots");
          }
          for (double res : r.residuals) worst_res = std::max(worst_res, res / scale);
        }
        for (std::size_t a = 1; a < reports.size(); ++a) {
          worst_dist = std::max(worst_dist, hausdorff(reports[0].roots, reports[a].roots));
        }
      } catch (const Error& e) {
        rep.check(false, tag + e.what());
      }
    }
  }
  rep.stats["max_relative_residual"] = worst_res;
  rep.stats["max_hausdorff"] = worst_dist;
  rep.stats["root_count_mismatches"] = count_mismatch;
  rep.check(worst_res <= 1e-6, "residual " + num(worst_res) + " exceeds 1e-6");
  rep.check(worst_dist <= 1e-6, "cross-method Hausdorff distance " + num(worst_dist) + " exceeds 1e-6");
  return rep;
}

std::vector<std::string> suite_names() { return {"lemmaA1", "prop51", "appendixD", "interpolant", "crossmethod"}; }

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "lemmaA1") {
    SuiteReport rep;
    rep.suite = name;
    for (int d = 1; d <= 6; ++d) rep.merge(lemma_a1_suite(d, 10000, rng), "d" + std::to_string(d) + ".");
    return rep;
  }
  if (name == "prop51") return prop51_suite(rng);
  if (name == "appendixD") return appendix_d_suite(rng);
  if (name == "interpolant") return interpolant_suite(rng);
  if (name == "crossmethod") return crossmethod_suite(rng);
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace polylab
