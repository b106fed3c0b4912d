#include <doctest.h>

#include <cmath>

#include "polylab/error.hpp"
#include "polylab/verification.hpp"

using namespace polylab;

TEST_CASE("subset-sum product closed form") {
  const std::vector<double> u2{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  CHECK(subset_sum_product(u2) == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(subset_sum_product_at_center(2) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(subset_sum_product_at_center(1) == 1.0);
  const std::vector<double> u3{0.5, -0.5, std::sqrt(0.5)};
  // Nonempty subsets of {a, b, c}: a, b, c, a+b, a+c, b+c, a+b+c on absolute values.
  const double a = 0.5, b = 0.5, c = std::sqrt(0.5);
  CHECK(subset_sum_product(u3) == doctest::Approx(a * b * c * (a + b) * (a + c) * (b + c) * (a + b + c)));
}

TEST_CASE("hausdorff distance and principal angles") {
  CHECK(hausdorff({{0.0}, {1.0}}, {{1.0}, {0.0}}) == 0.0);
  CHECK(hausdorff({{0.0}}, {{0.0}, {3.0}}) == doctest::Approx(3.0));
  CHECK(std::isinf(hausdorff({}, {{0.0}})));
  CMatrix a(2, 1), b(2, 1);
  a << 1.0, 0.0;
  b << std::cos(0.1), std::sin(0.1);
  CHECK(principal_angle_sine(a, b) == doctest::Approx(std::sin(0.1)));
}

TEST_CASE("property suites pass under the default seed") {
  for (const auto& name : suite_names()) {
    const SuiteReport r = run_suite(name, 1);
    INFO(name);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(run_suite("nope"), InvalidArgument);
  Rng rng(1);
  CHECK_THROWS_AS(lemma_a1_suite(11, 10, rng), InvalidArgument);
}

TEST_CASE("suites are deterministic") {
  CHECK(run_suite("appendixD", 4).stats == run_suite("appendixD", 4).stats);
  CHECK(run_suite("crossmethod", 4).stats == run_suite("crossmethod", 4).stats);
}
