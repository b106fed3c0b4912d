#include "polylab/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "polylab/error.hpp"

namespace polylab {
namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

cplx complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw InvalidArgument("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
  }
  return {j.get<double>(), 0.0};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

}  // namespace

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"exps", m.exps}, {"re", c.real()}, {"im", c.imag()}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const json& j) {
  try {
    const int nvars = j.at("nvars").get<int>();
    if (nvars < 1) throw InvalidArgument("nvars must be positive");
    MultiPoly::TermMap terms;
    for (const auto& t : j.at("terms")) {
      Monomial m(t.at("exps").get<std::vector<int>>());
      if (m.nvars() != nvars) throw DimensionMismatch("term exponent length differs from nvars");
      for (int e : m.exps) {
        if (e < 0) throw InvalidArgument("negative exponent");
      }
      terms[m] += cplx(t.value("re", 0.0), t.value("im", 0.0));
    }
    return MultiPoly(nvars, std::move(terms));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed polynomial JSON: ") + e.what());
  }
}

json point_to_json(std::span<const cplx> x) {
  json out = json::array();
  for (const cplx& v : x) out.push_back({v.real(), v.imag()});
  return out;
}

Point point_from_json(const json& j) {
  Point x;
  for (const auto& v : j) x.push_back(complex_from_json(v));
  return x;
}

json to_json(const PolySystem& s) {
  json j{{"d", s.d}, {"polys", json::array()}};
  for (const auto& p : s.polys) j["polys"].push_back(to_json(p));
  if (s.true_roots) {
    j["true_roots"] = json::array();
    for (const auto& r : *s.true_roots) j["true_roots"].push_back(point_to_json(r));
  }
  if (!s.family_tag.empty()) j["family_tag"] = s.family_tag;
  if (!s.family_params.empty()) j["family_params"] = s.family_params;
  return j;
}

PolySystem system_from_json(const json& j) {
  PolySystem s;
  try {
    s.d = j.at("d").get<int>();
    for (const auto& p : j.at("polys")) s.polys.push_back(multipoly_from_json(p));
    if (j.contains("true_roots")) {
      std::vector<Point> roots;
      for (const auto& r : j["true_roots"]) roots.push_back(point_from_json(r));
      s.true_roots = std::move(roots);
    }
    s.family_tag = j.value("family_tag", "");
    if (j.contains("family_params")) s.family_params = j["family_params"].get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed system JSON: ") + e.what());
  }
  s.validate();
  return s;
}

json to_json(const RootReport& r) {
  json j{{"method_tag", r.method}, {"roots", json::array()}, {"residuals", json::array()},
         {"kappa_root", json::array()}, {"subproblem_kappa", json::array()}};
  for (const auto& x : r.roots) j["roots"].push_back(point_to_json(x));
  for (double v : r.residuals) j["residuals"].push_back(number(v));
  for (double v : r.kappa_root) j["kappa_root"].push_back(number(v));
  for (double v : r.subproblem_kappa) j["subproblem_kappa"].push_back(number(v));
  json diag{{"basis", json::array()}, {"dropped_h_rows", json::array()}, {"warnings", r.diagnostics.warnings},
            {"basis_condition", number(r.diagnostics.basis_condition)},
            {"sigma_min_hat", number(r.diagnostics.sigma_min_hat)},
            {"nullspace_gap", number(r.diagnostics.nullspace_gap)}};
  for (const auto& m : r.diagnostics.basis) diag["basis"].push_back(m.label());
  for (const auto& m : r.diagnostics.dropped_h_rows) diag["dropped_h_rows"].push_back(m.label());
  j["diagnostics"] = diag;
  return j;
}

json to_json(const ConditionReport& r) {
  json j{{"method_tag", r.method_tag}, {"kappa_root", number(r.kappa_root)}, {"kappa_sub", number(r.kappa_sub)},
         {"ratio", number(r.ratio)}, {"predicted_ratio", number(r.predicted_ratio)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Point parse_point(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    try {
      return point_from_json(json::parse(t));
    } catch (const json::exception& e) {
      throw InvalidArgument(std::string("malformed point: ") + e.what());
    }
  }
  Point x;
  std::stringstream ss(t);
  std::string part;
  const char sep = t.find(';') != std::string::npos ? ';' : ',';
  while (std::getline(ss, part, sep)) {
    part = trim(part);
    if (part.empty()) continue;
    try {
      if (sep == ';') {
        const auto comma = part.find(',');
        if (comma == std::string::npos) {
          x.emplace_back(std::stod(part), 0.0);
        } else {
          x.emplace_back(std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1)));
        }
      } else {
        x.emplace_back(std::stod(part), 0.0);
      }
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse point coordinate '" + part + "'");
    }
  }
  if (x.empty()) throw InvalidArgument("empty point");
  return x;
}

PolySystem read_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return system_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace polylab
