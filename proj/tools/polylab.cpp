#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "polylab/bench.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/io.hpp"
#include "polylab/solvers.hpp"
#include "polylab/verification.hpp"

using namespace polylab;

namespace {

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(j, out);
  }
}

json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRecord>& recs) {
  json rows = json::array();
  for (const auto& r : recs) {
    rows.push_back({{"x", r.x}, {"median_digits", r.median_digits}, {"theory_digits", r.theory_digits},
                    {"stable_digits", r.stable_digits}, {"n_trials", r.n_trials}});
  }
  return {{"id", spec.id}, {"method", to_string(spec.method)}, {"family", to_string(spec.family)},
          {"axis", to_string(spec.axis)}, {"records", rows}};
}

std::string title_of(const SweepSpec& s) {
  return s.id + ": " + to_string(s.method) + " on " + to_string(s.family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditioning experiments for polynomial system solvers"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a system from a named family");
  std::string family = "orthogonal", out;
  int d = 2;
  double param = 1e-2;
  std::vector<double> shift;
  bool identity = false;
  gen->add_option("--family", family, "orthogonal|cyclic_squares|hypercube|permutation|notdev2d|notdev3d")->required();
  gen->add_option("--d", d, "Number of variables")->capture_default_str();
  gen->add_option("--param", param, "sigma, or c for the hypercube")->capture_default_str();
  gen->add_option("--shift", shift, "Root shift, one value per coordinate or a single value")->expected(1, -1);
  gen->add_flag("--identity", identity, "Use identity instead of random orthogonal/permutation matrices");
  gen->add_option("--out", out, "Output file (stdout if omitted)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve a system stored as JSON");
  std::string system_path, method = "nf";
  bool polish = false;
  solve_cmd->add_option("--system", system_path, "System JSON file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--method", method, "gb|rur|mep|nf|macaulay")->required();
  solve_cmd->add_flag("--polish", polish, "Apply two Newton steps to each root");
  solve_cmd->add_option("--out", out, "Output file (stdout if omitted)");

  // audit
  auto* audit = app.add_subcommand("audit", "Condition numbers of every method at one root");
  std::string root_text;
  audit->add_option("--system", system_path, "System JSON file")->required()->check(CLI::ExistingFile);
  audit->add_option("--root", root_text, "Root as \"re,im;re,im\", \"a,b\" or a JSON list")->required();
  audit->add_option("--out", out, "Output file (stdout if omitted)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Accuracy sweeps with theory overlays");
  std::string figure, out_dir = ".";
  bool custom = false;
  int trials = 100, points = 17, threads = 0;
  std::string axis = "log_sigma";
  double from = -8, to = 0;
  bool no_balance = false;
  auto* fig_opt = sweep->add_option("--figure", figure, "1c|1d|1e|1f|1g|2|3|4|5");
  auto* custom_opt = sweep->add_flag("--custom", custom, "Sweep described by the options below");
  fig_opt->excludes(custom_opt);
  sweep->add_option("--method", method, "Method for --custom");
  sweep->add_option("--family", family, "Family for --custom");
  sweep->add_option("--axis", axis, "log_sigma|neg_log_c|dim")->capture_default_str();
  sweep->add_option("--from", from, "First axis value")->capture_default_str();
  sweep->add_option("--to", to, "Last axis value")->capture_default_str();
  sweep->add_option("--points", points, "Number of axis values")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--d", d, "Number of variables when the axis is not dim")->capture_default_str();
  sweep->add_option("--param", param, "sigma or c when the axis is dim")->capture_default_str();
  sweep->add_option("--shift", shift, "Root shift (single value, same in every coordinate)")->expected(1);
  sweep->add_flag("--polish", polish, "Newton-polish roots");
  sweep->add_flag("--no-balance", no_balance, "Unbalanced companion matrices for gb/rur");
  sweep->add_option("--trials", trials, "Trials per axis value")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "Worker threads (default POLYLAB_THREADS or all cores)");
  sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Run a numerical property suite");
  std::string suite;
  verify->add_option("--suite", suite, "lemmaA1|prop51|appendixD|interpolant|crossmethod")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--out", out, "Output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      FamilySpec spec;
      spec.family = parse_family(family);
      spec.d = d;
      spec.param = param;
      spec.randomize = !identity;
      if (!shift.empty()) {
        if (shift.size() == 1) shift.assign(static_cast<std::size_t>(d), shift[0]);
        spec.shift = Point(shift.begin(), shift.end());
      }
      Rng rng(seed);
      emit(to_json(generate(spec, rng)), out);
    } else if (*solve_cmd) {
      const PolySystem s = read_system(system_path);
      Rng rng(seed);
      SolveOptions opts;
      opts.polish = polish;
      emit(to_json(solve(s, parse_method(method), rng, opts)), out);
    } else if (*audit) {
      const PolySystem s = read_system(system_path);
      const Point x = parse_point(root_text);
      Rng rng(seed);
      json reports = json::array();
      for (const auto& r : audit_root(s, x, rng)) reports.push_back(to_json(r));
      emit({{"root", point_to_json(x)}, {"kappa_root", kappa_root(s, x)}, {"reports", reports}}, out);
    } else if (*sweep) {
      std::vector<SweepSpec> specs;
      if (!figure.empty()) {
        specs = figure_specs(figure, trials, seed);
      } else if (custom) {
        SweepSpec s;
        s.id = "custom";
        s.method = parse_method(method);
        s.family = parse_family(family);
        s.axis = parse_axis(axis);
        s.d = d;
        s.param = param;
        s.trials = trials;
        s.seed = seed;
        s.polish = polish;
        s.balance = !no_balance;
        if (!shift.empty()) s.shift = shift[0];
        for (int k = 0; k < points; ++k) {
          s.xs.push_back(points == 1 ? from : from + (to - from) * k / (points - 1));
        }
        specs.push_back(std::move(s));
      } else {
        throw InvalidArgument("sweep needs --figure or --custom");
      }
      std::filesystem::create_directories(out_dir);
      json summary = json::array();
      for (const auto& spec : specs) {
        spec.validate();
        const auto recs = run_sweep(spec, threads);
        const std::string base = (std::filesystem::path(out_dir) / ("fig_" + spec.id)).string();
        emit_csv(recs, base + ".csv");
        emit_svg(recs, base + ".svg", title_of(spec), axis_label(spec.axis));
        summary.push_back(sweep_to_json(spec, recs));
        std::cerr << "wrote " << base << ".csv and " << base << ".svg\n";
      }
      std::cout << summary.dump(2) << '\n';
    } else if (*verify) {
      const SuiteReport rep = run_suite(suite, seed);
      emit({{"suite", rep.suite}, {"pass", rep.pass}, {"stats", rep.stats}, {"failures", rep.failures}}, out);
      return rep.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "polylab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
