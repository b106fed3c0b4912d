#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "polylab/error.hpp"
#include "polylab/families.hpp"
#include "polylab/io.hpp"

using namespace polylab;

TEST_CASE("system JSON round trip") {
  Rng rng(1);
  FamilySpec spec;
  spec.family = Family::permutation;
  spec.d = 3;
  spec.param = 0.1;
  spec.shift = Point(3, cplx(0.1, -0.2));
  const PolySystem s = generate(spec, rng);
  const PolySystem back = system_from_json(json::parse(to_json(s).dump()));
  REQUIRE(back.d == 3);
  for (int i = 0; i < 3; ++i) CHECK(testing::max_coeff_diff(back.polys[i], s.polys[i]) == 0.0);
  REQUIRE(back.true_roots);
  CHECK(back.true_roots->size() == s.true_roots->size());
  CHECK(back.family_tag == s.family_tag);
  CHECK(back.family_params == s.family_params);

  const auto path = (std::filesystem::temp_directory_path() / "polylab_io_test.json").string();
  write_json(to_json(s), path);
  CHECK(read_system(path).polys.size() == 3);
  std::remove(path.c_str());
}

TEST_CASE("malformed systems are rejected") {
  CHECK_THROWS_AS(system_from_json(json{{"d", 2}, {"polys", json::array()}}), Error);
  CHECK_THROWS(system_from_json(json::parse("[1, 2]")));
}

TEST_CASE("point parsing") {
  const Point a = parse_point("0.5,1;-2,0");
  REQUIRE(a.size() == 2);
  CHECK(a[0] == cplx(0.5, 1.0));
  CHECK(a[1] == cplx(-2.0, 0.0));
  const Point b = parse_point("0.25,0.75");
  CHECK(b == Point{0.25, 0.75});
  const Point c = parse_point("[[1,2],[3,4]]");
  CHECK(c == Point{cplx(1, 2), cplx(3, 4)});
  CHECK_THROWS_AS(parse_point("abc"), InvalidArgument);
}

TEST_CASE("non-finite numbers in reports") {
  RootReport r;
  r.method = "nf";
  r.roots = {{1.0, 2.0}};
  r.residuals = {0.0};
  r.subproblem_kappa = {std::numeric_limits<double>::infinity()};
  r.kappa_root = {std::numeric_limits<double>::infinity()};
  const json j = to_json(r);
  const std::string text = j.dump();
  CHECK(text.find("\"inf\"") != std::string::npos);
  CHECK(json::parse(text)["roots"].size() == 1);
}
