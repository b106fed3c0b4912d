#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "polylab/conditioning.hpp"
#include "polylab/poly.hpp"
#include "polylab/solvers.hpp"

namespace polylab {

using json = nlohmann::json;

json to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const json& j);

/// Roots are written as lists of [re, im] pairs, one pair per coordinate.
json to_json(const PolySystem& s);
PolySystem system_from_json(const json& j);

json to_json(const RootReport& r);
json to_json(const ConditionReport& r);

json point_to_json(std::span<const cplx> x);
Point point_from_json(const json& j);

/// Accepts "re,im;re,im" or "re,re" (real coordinates) or a JSON list of pairs.
Point parse_point(const std::string& text);

PolySystem read_system(const std::string& path);
void write_json(const json& j, const std::string& path);

}  // namespace polylab
