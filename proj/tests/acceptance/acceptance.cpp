// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "polylab/bench.hpp"
#include "polylab/conditioning.hpp"
#include "polylab/families.hpp"
#include "polylab/mep.hpp"
#include "polylab/solvers.hpp"
#include "polylab/verification.hpp"

using namespace polylab;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok " : "FAILED ") + what);
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// sigma^k by repeated multiplication in extended precision.
double power_oracle(double sigma, long long k) {
  long double r = 1.0L;
  for (long long i = 0; i < k; ++i) r *= sigma;
  return static_cast<double>(r);
}

std::size_t nearest(const std::vector<EigTriple>& eig, cplx target) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < eig.size(); ++k) {
    if (std::abs(eig[k].lambda - target) < std::abs(eig[best].lambda - target)) best = k;
  }
  return best;
}

Outcome criterion1() {
  Outcome out;
  double worst_exponent = 0.0;
  bool ulp_ok = true;
  for (int d = 2; d <= 6; ++d) {
    for (double sigma : {1e-1, 1e-2}) {
      const long long n = 1LL << d;
      const UnivariateSolve g = solve_gb_elimination_example(d, sigma);
      const double slope = g.poly.coeff(1).real();
      const double expect = -power_oracle(sigma, n - 1);
      const double gap = std::abs(slope - expect) / (std::nextafter(std::abs(expect), 1.0) - std::abs(expect));
      if (!(gap <= 1.0) || g.poly.coeff(1).imag() != 0.0) {
        ulp_ok = false;
        out.check(false, "g'(0) for d=" + std::to_string(d) + " sigma=" + fmt(sigma) + " is " + fmt(gap) + " ulp off");
      }
      FamilySpec spec;
      spec.family = Family::cyclic_squares;
      spec.d = d;
      spec.param = sigma;
      Rng rng(1);
      const PolySystem s = generate(spec, rng);
      const Point origin(static_cast<std::size_t>(d), 0.0);
      const double ratio = kappa_uni(g.poly, 0.0) / kappa_root(s, origin);
      const double exponent = std::log10(ratio) / -std::log10(sigma);
      worst_exponent = std::max(worst_exponent, std::abs(exponent - static_cast<double>(n - 2)));
    }
  }
  out.check(ulp_ok, "g'(0) = -sigma^(2^d-1) within 1 ulp, d=2..6, sigma in {1e-1,1e-2}");
  out.check(worst_exponent <= 1e-9, "kappa_uni/kappa_root exponent off by at most " + fmt(worst_exponent));

  Rng rng(1);
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int d : {2, 3}) {
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd u = random_unit_vector(d, rng);
      const UnivariateSolve r =
          solve_rur_example(d, 4.0, std::span<const double>(u.data(), static_cast<std::size_t>(d)), RurMode::exact_roots, rng);
      const double bound = std::pow(2.0, static_cast<double>((1LL << d) - 1));
      worst_margin = std::min(worst_margin, r.kappa_uni / bound);
    }
  }
  out.check(worst_margin >= 1.0, "RUR kappa_uni / (c/2)^(2^d-1) >= 1, smallest " + fmt(worst_margin));
  return out;
}

Outcome from_suite(const SuiteReport& rep, const std::vector<std::string>& keys) {
  Outcome out;
  std::string stats;
  for (const auto& k : keys) stats += k + "=" + fmt(rep.stats.at(k)) + " ";
  out.check(rep.pass, rep.suite + ": " + stats);
  for (const auto& f : rep.failures) out.notes.push_back("  " + f);
  return out;
}

Outcome criterion2() {
  Rng rng(1);
  return from_suite(prop51_suite(rng), {"max_identity_error", "max_derivative_error"});
}

Outcome criterion3() {
  Outcome out;
  double worst_mep = 0.0, worst_ms = 0.0;
  int cases = 0;
  for (int seed = 1; seed <= 50; ++seed) {
    for (int d : {2, 3}) {
      Rng rng(static_cast<std::uint64_t>(seed));
      FamilySpec spec;
      spec.family = Family::orthogonal;
      spec.d = d;
      spec.param = std::pow(10.0, -2.0 * rng.uniform());
      spec.shift = Point(static_cast<std::size_t>(d), 1.0 / 3.0);
      const PolySystem s = generate(spec, rng);
      const Point x = designated_root(spec);

      const MultiParamEig mep = mep_from_system(s);
      const OperatorDeterminants od = operator_determinants(mep);
      const MSMatrices ms = build_ms_matrices(s);
      for (int i = 0; i < d; ++i) {
        const cplx xi = x[static_cast<std::size_t>(i)];
        GenEigProblem gm{od.delta[static_cast<std::size_t>(i)], od.delta0, {}, {}};
        const auto em = generalized_eig(gm);
        const double direct_mep = kappa_eig(gm, em[nearest(em, xi)]);
        worst_mep = std::max(worst_mep, std::abs(kappa_eig_mep_formula(mep, s, x, i) / direct_mep - 1.0));

        const CMatrix& M = ms.M[static_cast<std::size_t>(i)];
        GenEigProblem gs{M, CMatrix::Identity(M.rows(), M.cols()), {}, {}};
        const auto es = generalized_eig(gs);
        const double direct_ms = kappa_eig(gs, es[nearest(es, xi)]);
        worst_ms = std::max(worst_ms, std::abs(kappa_eig_ms_formula(s, x, ms.quotient, i) / direct_ms - 1.0));
        ++cases;
      }
    }
  }
  out.check(worst_mep <= 1e-6, "operator-determinant formula vs direct, max relative gap " + fmt(worst_mep) + " over " +
                                   std::to_string(cases) + " eigenvalues");
  out.check(worst_ms <= 1e-6, "multiplication-matrix formula vs direct, max relative gap " + fmt(worst_ms));
  return out;
}

Outcome criterion4() {
  Rng rng(1);
  const SuiteReport rep = interpolant_suite(rng, 50);
  Outcome out;
  const double margin = rep.stats.at("min_prop82_margin");
  const double lo = rep.stats.at("bivariate_norm_over_sigma_min");
  const double hi = rep.stats.at("bivariate_norm_over_sigma_max");
  const double tri = rep.stats.at("trivariate_printed_relative_error");
  out.check(margin >= -1e-10, "||[det Q]_B|| - sigma_min(M_rho) >= -1e-10 on 50 systems, smallest " + fmt(margin));
  out.check(lo >= 0.1 && hi <= 10.0, "bivariate ||[det Q]_B||/sigma in [" + fmt(lo) + ", " + fmt(hi) + "]");
  out.check(tri <= 1e-10, "trivariate interpolant coefficients relative error " + fmt(tri));
  if (!rep.pass) {
    for (const auto& f : rep.failures) out.notes.push_back("  (suite) " + f);
  }
  return out;
}

double at(const std::vector<SweepRecord>& recs, double x, double SweepRecord::*field) {
  for (const auto& r : recs) {
    if (std::abs(r.x - x) < 1e-9) return r.*field;
  }
  throw std::runtime_error("axis value missing from sweep");
}

Outcome criterion5() {
  Outcome out;
  auto sweep = [](const std::string& fig) { return run_sweep(figure_specs(fig, 100, 1).front()); };
  for (const std::string fig : {"1c", "1e", "1f", "1g"}) {
    const auto recs = sweep(fig);
    const double target = fig == "1c" ? 3.0 : 2.0;
    const double slope = fitted_slope(recs, -4.0, -1.0);
    out.check(std::abs(slope - target) <= 0.5, fig + " slope " + fmt(slope) + " vs " + fmt(target));
    const double loss = at(recs, -6.0, &SweepRecord::stable_digits) - at(recs, -6.0, &SweepRecord::median_digits);
    out.check(loss >= 4.0, fig + " at sigma=1e-6 is " + fmt(loss) + " digits below the stable line");
  }
  {
    const auto recs = sweep("1d");
    const double slope = fitted_slope(recs, -2.0, -std::log10(4.0));
    out.check(std::abs(slope - 3.0) <= 0.5, "1d slope over c in [4,100] " + fmt(slope) + " vs 3");
  }
  for (const std::string fig : {"2", "3"}) {
    const auto recs = sweep(fig);
    bool monotone = true;
    for (std::size_t k = 1; k < recs.size(); ++k) monotone = monotone && recs[k].median_digits <= recs[k - 1].median_digits;
    const double loss = at(recs, 2.0, &SweepRecord::median_digits) - at(recs, 6.0, &SweepRecord::median_digits);
    out.check(monotone, fig + " digits non-increasing in d");
    out.check(loss >= 6.0, fig + " loses " + fmt(loss) + " digits from d=2 to d=6");
  }
  return out;
}

Outcome criterion6() {
  Rng rng(1);
  return from_suite(crossmethod_suite(rng, 25), {"max_relative_residual", "max_hausdorff", "root_count_mismatches"});
}

Outcome criterion7() {
  Outcome out;
  const SuiteReport a = run_suite("lemmaA1", 1);
  const SuiteReport a2 = run_suite("lemmaA1", 1);
  const SuiteReport b = run_suite("appendixD", 1);
  const SuiteReport b2 = run_suite("appendixD", 1);
  out.check(a.pass, "Monte Carlo never exceeds f(u0) for d <= 6 with 1e4 draws");
  const double med = b.stats.at("diag.eps[1].median_ratio");
  const double max_gap = b.stats.at("diag.eps[1].max_gap");
  out.check(b.pass, "null-space gap: max " + fmt(max_gap) + " <= 2 eps/sigma_min = 2e-5, median ratio " + fmt(med) +
                        ", Macaulay median ratio " + fmt(b.stats.at("macaulay.eps[0].median_ratio")));
  out.check(a.stats == a2.stats && b.stats == b2.stats, "both suites deterministic under seed 1");
  for (const auto& f : b.failures) out.notes.push_back("  " + f);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<double, std::function<Outcome()>>> criteria = {
      {1.0, criterion1}, {5.0, criterion2}, {30.0, criterion3}, {30.0, criterion4},
      {300.0, criterion5}, {30.0, criterion6}, {30.0, criterion7}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [budget, run] = criteria[k];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < budget, "runtime " + fmt(secs, 3) + " s within " + fmt(budget) + " s");
    std::printf("criterion %zu: %s\n", k + 1, o.pass ? "PASS" : "FAIL");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
