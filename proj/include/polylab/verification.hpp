#pragma once

#include <map>
#include <string>
#include <vector>

#include "polylab/linalg.hpp"
#include "polylab/mep.hpp"
#include "polylab/rng.hpp"

namespace polylab {

/// Outcome of a property suite: overall verdict, measured statistics, and one
/// line per failed check.
struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::map<std::string, double> stats;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what);
  void merge(const SuiteReport& other, const std::string& prefix);
};

/// f(u) = prod over nonempty S of sum_{i in S} |u_i|.
double subset_sum_product(std::span<const double> u);
/// prod_m (m / sqrt d)^C(d, m), the value of f at (d^{-1/2}, ...).
double subset_sum_product_at_center(int d);

SuiteReport lemma_a1_suite(int d, int n_samples, Rng& rng);

/// Signed central difference (s(x + h e_j) + s(x - h e_j)) / (2h) of
/// s = sigma_min(W_i), Richardson-extrapolated from h and h/10, against |B0_ij|.
SuiteReport singular_derivative_suite(const MultiParamEig& mep, std::span<const cplx> x,
                                      const std::vector<double>& h_steps = {1e-4, 1e-5});

/// ||D B0 - J|| / ||J|| on the permutation family plus the derivative check,
/// for d in {2,3,4} and sigma in {1e-1, 1e-2}.
SuiteReport prop51_suite(Rng& rng);

/// Largest principal-angle sine between the null spaces of M and M + N over
/// `draws` complex Gaussian N scaled to ||N||_2 = eps.
SuiteReport nullspace_perturbation_suite(const CMatrix& M, int nullity, const std::vector<double>& eps_list,
                                         Rng& rng, int draws = 50);
double principal_angle_sine(const CMatrix& A, const CMatrix& B);

SuiteReport appendix_d_suite(Rng& rng);

/// Interpolant and normal-form checks, including the printed bivariate and
/// trivariate reductions and the sigma_min(M_rho) inequality.
SuiteReport interpolant_suite(Rng& rng, int n_systems = 50);

/// Normal form, Macaulay and operator-determinant solvers on random well-conditioned systems.
SuiteReport crossmethod_suite(Rng& rng, int n_systems = 25);

/// Hausdorff distance between two root sets.
double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b);

SuiteReport run_suite(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> suite_names();

}  // namespace polylab
