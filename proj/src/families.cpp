#include "polylab/families.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polylab/error.hpp"
#include "polylab/linalg.hpp"
#include "polylab/solvers.hpp"

namespace polylab {
namespace {

MultiPoly square(int d, int i) { return MultiPoly::monomial(Monomial::var(d, i) * Monomial::var(d, i)); }
MultiPoly var(int d, int i) { return MultiPoly::variable(d, i); }

MultiPoly linear(int d, const CMatrix& M, int row, cplx scale) {
  MultiPoly out(d);
  for (int j = 0; j < d; ++j) out = out + var(d, j).scaled(scale * M(row, j));
  return out;
}

std::vector<Point> cyclic_roots(int d, double sigma) {
  std::vector<Point> roots{Point(static_cast<std::size_t>(d), 0.0)};
  const long long m = (1LL << d) - 1;
  for (long long k = 0; k < m; ++k) {
    Point x(static_cast<std::size_t>(d));
    x[0] = sigma * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    for (int i = 1; i < d; ++i) x[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)] * x[static_cast<std::size_t>(i - 1)] / sigma;
    roots.push_back(std::move(x));
  }
  return roots;
}

std::vector<Point> hypercube_roots(int d, double c) {
  const double a = 1.0 / (c * std::sqrt(static_cast<double>(d)));
  std::vector<Point> roots;
  for (long long mask = 0; mask < (1LL << d); ++mask) {
    Point x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = (mask >> i & 1) ? -a : a;
    roots.push_back(std::move(x));
  }
  return roots;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::orthogonal: return "orthogonal";
    case Family::cyclic_squares: return "cyclic_squares";
    case Family::hypercube: return "hypercube";
    case Family::permutation: return "permutation";
    case Family::notdev2d: return "notdev2d";
    case Family::notdev3d: return "notdev3d";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::orthogonal, Family::cyclic_squares, Family::hypercube, Family::permutation,
                   Family::notdev2d, Family::notdev3d}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

void FamilySpec::validate() const {
  if (d < 1) throw InvalidArgument("family dimension must be at least 1");
  if (!(param > 0.0) || !std::isfinite(param)) throw InvalidArgument("family parameter must be positive and finite");
  if (family == Family::notdev2d && d != 2) throw InvalidArgument("notdev2d is bivariate");
  if (family == Family::notdev3d && d != 3) throw InvalidArgument("notdev3d is trivariate");
  if (family == Family::cyclic_squares && d > 20) throw InvalidArgument("cyclic_squares limited to d <= 20");
  if (family == Family::hypercube && d > 20) throw InvalidArgument("hypercube limited to d <= 20");
  if (shift && static_cast<int>(shift->size()) != d) throw DimensionMismatch("shift length differs from d");
}

PolySystem generate(const FamilySpec& spec, Rng& rng) {
  spec.validate();
  const int d = spec.d;
  const double p = spec.param;
  PolySystem s;
  s.d = d;
  s.family_tag = to_string(spec.family);
  s.family_params["d"] = d;
  s.family_params[spec.family == Family::hypercube ? "c" : "sigma"] = p;
  const Point origin(static_cast<std::size_t>(d), 0.0);

  switch (spec.family) {
    case Family::orthogonal: {
      const CMatrix Q = spec.randomize ? random_orthogonal(d, rng) : CMatrix::Identity(d, d);
      for (int i = 0; i < d; ++i) s.polys.push_back(square(d, i) + linear(d, Q, i, p));
      s.true_roots = std::vector<Point>{origin};
      break;
    }
    case Family::cyclic_squares: {
      for (int i = 0; i < d; ++i) s.polys.push_back(square(d, i) - var(d, (i + 1) % d).scaled(p));
      s.true_roots = cyclic_roots(d, p);
      break;
    }
    case Family::hypercube: {
      const CMatrix A = spec.randomize ? random_orthogonal(d, rng) : CMatrix::Identity(d, d);
      const double shift = 1.0 / (p * p * d);
      for (int i = 0; i < d; ++i) {
        MultiPoly row(d);
        for (int j = 0; j < d; ++j) row = row + (square(d, j) - MultiPoly::constant(d, shift)).scaled(A(i, j));
        s.polys.push_back(row);
      }
      s.true_roots = hypercube_roots(d, p);
      break;
    }
    case Family::permutation: {
      std::vector<int> perm(static_cast<std::size_t>(d));
      if (spec.randomize) {
        perm = random_permutation(d, rng);
      } else {
        for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
      }
      for (int i = 0; i < d; ++i) s.polys.push_back(square(d, i) + var(d, perm[static_cast<std::size_t>(i)]).scaled(p));
      s.true_roots = std::vector<Point>{origin};
      break;
    }
    case Family::notdev2d: {
      const CMatrix A = spec.randomize ? random_orthogonal(2, rng) : CMatrix::Identity(2, 2);
      const MultiPoly x = var(2, 0), y = var(2, 1);
      s.polys.push_back(x * x + x.scaled(p * A(0, 0)) + y.scaled(p * A(0, 1)));
      s.polys.push_back(x * y + (y * y).scaled(p) + x.scaled(p * A(1, 0)) + y.scaled(p * A(1, 1)));
      s.true_roots = std::vector<Point>{origin};
      break;
    }
    case Family::notdev3d: {
      const MultiPoly x = var(3, 0), y = var(3, 1), z = var(3, 2);
      s.polys.push_back(x * y + (x * x).scaled(p) + y.scaled(p));
      s.polys.push_back(x * y + (y * y).scaled(p) + z.scaled(p));
      s.polys.push_back(x * y + (z * z).scaled(p) + x.scaled(p));
      s.true_roots = std::vector<Point>{origin};
      break;
    }
  }
  if (spec.shift) s = s.translated(*spec.shift);
  s.validate();
  return s;
}

PolySystem random_dense_system(int d, int degree, Rng& rng) {
  if (d < 1 || degree < 1) throw InvalidArgument("random system needs d >= 1 and degree >= 1");
  PolySystem s;
  s.d = d;
  s.family_tag = "random_dense";
  for (int i = 0; i < d; ++i) {
    MultiPoly::TermMap terms;
    for (const auto& m : monomials_up_to(degree, d)) terms[m] = rng.complex_normal();
    s.polys.emplace_back(d, std::move(terms));
  }
  return s;
}

PolySystem random_square_system(int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("random system needs d >= 1");
  PolySystem s;
  s.d = d;
  s.family_tag = "random_square";
  for (int i = 0; i < d; ++i) {
    MultiPoly p = square(d, i) + MultiPoly::constant(d, rng.complex_normal());
    for (int j = 0; j < d; ++j) p = p + var(d, j).scaled(rng.complex_normal());
    s.polys.push_back(std::move(p));
  }
  return s;
}

Point designated_root(const FamilySpec& spec) {
  spec.validate();
  Point x(static_cast<std::size_t>(spec.d), 0.0);
  if (spec.family == Family::hypercube) {
    for (auto& v : x) v = 1.0 / (spec.param * std::sqrt(static_cast<double>(spec.d)));
  }
  if (spec.shift) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += (*spec.shift)[i];
  }
  return x;
}

double distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionMismatch("points of different dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double true_root_error(const RootReport& report, std::span<const cplx> truth) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : report.roots) best = std::min(best, distance(r, truth));
  return best;
}

}  // namespace polylab
