#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "polylab/bench.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/io.hpp"
#include "polylab/solvers.hpp"
#include "polylab/verification.hpp"

namespace py = pybind11;
using namespace polylab;

// Values cross the boundary as JSON text; the Python side decodes them.
namespace {

std::string generate_json(const std::string& family, int d, double param, std::optional<std::vector<double>> shift,
                          bool randomize, std::uint64_t seed) {
  FamilySpec spec;
  spec.family = parse_family(family);
  spec.d = d;
  spec.param = param;
  spec.randomize = randomize;
  if (shift) {
    if (shift->size() == 1) shift->assign(static_cast<std::size_t>(d), (*shift)[0]);
    spec.shift = Point(shift->begin(), shift->end());
  }
  Rng rng(seed);
  return to_json(generate(spec, rng)).dump();
}

std::string solve_json(const std::string& system, const std::string& method, bool polish, std::uint64_t seed) {
  const PolySystem s = system_from_json(json::parse(system));
  Rng rng(seed);
  SolveOptions opts;
  opts.polish = polish;
  RootReport r;
  {
    py::gil_scoped_release release;
    r = solve(s, parse_method(method), rng, opts);
  }
  return to_json(r).dump();
}

std::string audit_json(const std::string& system, const std::string& root, std::uint64_t seed) {
  const PolySystem s = system_from_json(json::parse(system));
  const Point x = point_from_json(json::parse(root));
  Rng rng(seed);
  json out = json::array();
  for (const auto& r : audit_root(s, x, rng)) out.push_back(to_json(r));
  return out.dump();
}

json records_json(const SweepSpec& spec, const std::vector<SweepRecord>& recs) {
  json rows = json::array();
  for (const auto& r : recs) {
    rows.push_back({{"x", r.x}, {"median_digits", r.median_digits}, {"theory_digits", r.theory_digits},
                    {"stable_digits", r.stable_digits}, {"n_trials", r.n_trials}});
  }
  return {{"id", spec.id}, {"method", to_string(spec.method)}, {"family", to_string(spec.family)},
          {"axis", to_string(spec.axis)}, {"records", rows}};
}

std::string figure_json(const std::string& figure, int trials, std::uint64_t seed, int threads) {
  json out = json::array();
  for (const auto& spec : figure_specs(figure, trials, seed)) {
    std::vector<SweepRecord> recs;
    {
      py::gil_scoped_release release;
      recs = run_sweep(spec, threads);
    }
    out.push_back(records_json(spec, recs));
  }
  return out.dump();
}

std::string sweep_json(const std::string& method, const std::string& family, const std::string& axis,
                       const std::vector<double>& xs, int d, double param, int trials, std::uint64_t seed, bool polish,
                       std::optional<double> shift, int threads) {
  SweepSpec spec;
  spec.id = "custom";
  spec.method = parse_method(method);
  spec.family = parse_family(family);
  spec.axis = parse_axis(axis);
  spec.xs = xs;
  spec.d = d;
  spec.param = param;
  spec.trials = trials;
  spec.seed = seed;
  spec.polish = polish;
  spec.shift = shift;
  spec.validate();
  std::vector<SweepRecord> recs;
  {
    py::gil_scoped_release release;
    recs = run_sweep(spec, threads);
  }
  return records_json(spec, recs).dump();
}

std::string verify_json(const std::string& suite, std::uint64_t seed) {
  const SuiteReport rep = run_suite(suite, seed);
  return json{{"suite", rep.suite}, {"pass", rep.pass}, {"stats", rep.stats}, {"failures", rep.failures}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conditioning experiments for polynomial system solvers";

  py::register_exception<Error>(m, "PolylabError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("generate_json", &generate_json, py::arg("family"), py::arg("d") = 2, py::arg("param") = 1e-2,
        py::arg("shift") = py::none(), py::arg("randomize") = true, py::arg("seed") = 1);
  m.def("solve_json", &solve_json, py::arg("system"), py::arg("method"), py::arg("polish") = false, py::arg("seed") = 1);
  m.def("audit_json", &audit_json, py::arg("system"), py::arg("root"), py::arg("seed") = 1);
  m.def("figure_json", &figure_json, py::arg("figure"), py::arg("trials") = 100, py::arg("seed") = 1,
        py::arg("threads") = 0);
  m.def("sweep_json", &sweep_json, py::arg("method"), py::arg("family"), py::arg("axis"), py::arg("xs"),
        py::arg("d") = 2, py::arg("param") = 1e-2, py::arg("trials") = 100, py::arg("seed") = 1,
        py::arg("polish") = false, py::arg("shift") = py::none(), py::arg("threads") = 0);
  m.def("verify_json", &verify_json, py::arg("suite"), py::arg("seed") = 1);
  m.def("digits_of_accuracy", &digits_of_accuracy, py::arg("err"));
  m.def("figure_ids", &figure_ids);
  m.def("suite_names", &suite_names);
}
