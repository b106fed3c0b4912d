#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "polylab/poly.hpp"

namespace testing {

using polylab::cplx;
using polylab::Monomial;
using polylab::MultiPoly;

inline MultiPoly poly(int d, std::initializer_list<std::pair<std::vector<int>, cplx>> terms) {
  MultiPoly::TermMap t;
  for (const auto& [e, c] : terms) t[Monomial(e)] += c;
  return MultiPoly(d, std::move(t));
}

// Straight power-sum evaluation, independent of the library's evaluator.
inline cplx naive_eval(const MultiPoly& p, const std::vector<cplx>& x) {
  cplx s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    cplx v = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int k = 0; k < m.exps[i]; ++k) v *= x[i];
    }
    s += v;
  }
  return s;
}

inline double max_coeff_diff(const MultiPoly& a, const MultiPoly& b) {
  double m = 0.0;
  for (const auto& [mono, c] : (a - b).terms()) m = std::max(m, std::abs(c));
  return m;
}

// Every point of `want` has a partner in `got` within tol.
inline bool covers(const std::vector<std::vector<cplx>>& got, const std::vector<std::vector<cplx>>& want, double tol) {
  for (const auto& w : want) {
    bool found = false;
    for (const auto& g : got) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) d2 += std::norm(w[i] - g[i]);
      found = found || std::sqrt(d2) <= tol;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace testing
