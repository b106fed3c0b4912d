#include <doctest.h>

#include <sstream>

#include "polylab/bench.hpp"
#include "polylab/error.hpp"

using namespace polylab;

TEST_CASE("digits of accuracy") {
  CHECK(digits_of_accuracy(1e-8) == doctest::Approx(8.0));
  CHECK(digits_of_accuracy(1.0) == 0.0);
  CHECK(digits_of_accuracy(1e-20) == 16.0);
  CHECK(digits_of_accuracy(0.0) == 16.0);
  CHECK(digits_of_accuracy(5.0) == 0.0);
  CHECK(digits_of_accuracy(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(digits_of_accuracy(std::nan("")) == 0.0);
}

TEST_CASE("CSV round trip and empty output") {
  std::ostringstream empty;
  write_csv({}, empty);
  CHECK(empty.str() == "x,median_digits,theory_digits,stable_digits,n_trials\n");

  const std::vector<SweepRecord> recs{{-1.5, 12.345678901234567, 13.0, 14.5, 100}, {0.1, 1.0 / 3.0, 0.0, 16.0, 7}};
  std::ostringstream os;
  write_csv(recs, os);
  std::istringstream is(os.str());
  CHECK(read_csv(is) == recs);
}

TEST_CASE("SVG is a single well-formed chart") {
  const std::vector<SweepRecord> recs{{-2, 10, 12, 14, 3}, {-1, 12, 14, 15, 3}};
  std::ostringstream os;
  write_svg(recs, os, "t <&> demo", "log10 sigma");
  const std::string svg = os.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  CHECK(svg.find("<&>") == std::string::npos);
  CHECK(svg.find("Theory prediction") != std::string::npos);
  CHECK(svg.find("Stable performance") != std::string::npos);
  CHECK(svg.find("Practical performance") != std::string::npos);
  std::size_t opens = 0, closes = 0;
  for (std::size_t p = svg.find("<g"); p != std::string::npos; p = svg.find("<g", p + 1)) ++opens;
  for (std::size_t p = svg.find("</g>"); p != std::string::npos; p = svg.find("</g>", p + 1)) ++closes;
  CHECK(opens == closes);
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  SweepSpec spec;
  spec.id = "t";
  spec.method = Method::nf;
  spec.family = Family::orthogonal;
  spec.xs = {-3.0, -1.0};
  spec.trials = 6;
  spec.shift = 1.0 / 3.0;
  const auto a = run_sweep(spec, 1);
  const auto b = run_sweep(spec, 3);
  CHECK(a == b);
  std::ostringstream ca, cb;
  write_csv(a, ca);
  write_csv(b, cb);
  CHECK(ca.str() == cb.str());
  CHECK(a[0].median_digits < a[1].median_digits);
  CHECK(a[0].theory_digits == doctest::Approx(10.0));
  CHECK(a[1].stable_digits == doctest::Approx(15.0));
}

TEST_CASE("well-conditioned regime reaches nearly full accuracy") {
  for (Method m : {Method::gb, Method::mep, Method::nf, Method::macaulay}) {
    SweepSpec spec;
    spec.id = "sane";
    spec.method = m;
    spec.family = m == Method::gb ? Family::cyclic_squares : m == Method::mep ? Family::permutation : Family::orthogonal;
    spec.xs = {0.0};
    spec.trials = 1;
    spec.shift = 1.0 / 3.0;
    INFO(to_string(m));
    CHECK(run_sweep(spec, 1)[0].median_digits > 13.0);
  }
}

TEST_CASE("solver failures count as zero digits") {
  SweepSpec spec;
  spec.id = "bad";
  spec.method = Method::nf;
  spec.family = Family::notdev3d;
  spec.d = 3;
  spec.xs = {0.0};  // sigma = 1 has roots at infinity
  spec.trials = 2;
  const auto recs = run_sweep(spec, 1);
  CHECK(recs[0].median_digits == 0.0);
  CHECK(recs[0].n_trials == 2);
}

TEST_CASE("figure specs and slopes") {
  CHECK(figure_ids().size() == 9);
  CHECK(figure_specs("4").size() == 2);
  CHECK(figure_specs("1d").front().axis == Axis::neg_log_c);
  CHECK(figure_specs("3", 10).front().trials == 10);
  CHECK_THROWS_AS(figure_specs("9"), InvalidArgument);
  const std::vector<SweepRecord> line{{-3, 7, 0, 0, 1}, {-2, 10, 0, 0, 1}, {-1, 13, 0, 0, 1}, {0, 0, 0, 0, 1}};
  CHECK(fitted_slope(line, -3, -1) == doctest::Approx(3.0));
  SweepSpec bad;
  bad.trials = 0;
  bad.xs = {1.0};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("theory lines are monotone for every devastating figure") {
  for (const auto& id : figure_ids()) {
    for (const auto& spec : figure_specs(id, 1)) {
      std::vector<double> theory;
      for (double x : spec.xs) {
        const FamilySpec f = spec.family_at(x);
        theory.push_back(theory_digits(spec.method, f.family, f.d, f.param));
      }
      INFO(spec.id);
      const bool increasing_axis = spec.axis != Axis::dim;
      for (std::size_t k = 1; k < theory.size(); ++k) {
        if (increasing_axis) CHECK(theory[k] >= theory[k - 1]);
        else CHECK(theory[k] <= theory[k - 1]);
      }
    }
  }
}
