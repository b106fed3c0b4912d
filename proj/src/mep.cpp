#include "polylab/mep.hpp"

#include <cmath>

#include "polylab/error.hpp"
#include "polylab/linalg.hpp"

namespace polylab {

CMatrix MultiParamEig::W(int i, std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("point dimension differs from the MEP");
  const auto& v = V[static_cast<std::size_t>(i)];
  CMatrix w = v[0];
  for (int j = 0; j < d; ++j) w -= x[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j + 1)];
  return w;
}

void MultiParamEig::validate() const {
  if (d < 1 || static_cast<int>(V.size()) != d) throw DimensionMismatch("MEP needs d equations");
  for (const auto& row : V) {
    if (static_cast<int>(row.size()) != d + 1) throw DimensionMismatch("each MEP equation needs d+1 matrices");
    const Eigen::Index n = row[0].rows();
    for (const auto& m : row) {
      if (m.rows() != n || m.cols() != n) throw DimensionMismatch("MEP coefficient matrices must be square and equal-sized");
    }
  }
}

void MultiParamEig::check_represents(const PolySystem& s, Rng& rng) const {
  validate();
  if (s.d != d) throw DimensionMismatch("MEP and system dimensions differ");
  for (int trial = 0; trial < 20; ++trial) {
    Point x(static_cast<std::size_t>(d));
    for (auto& v : x) v = rng.complex_normal();
    for (int i = 0; i < d; ++i) {
      const cplx det = W(i, x).determinant();
      const cplx p = s.polys[static_cast<std::size_t>(i)].eval(x);
      double scale = 0.0;
      for (const auto& [m, c] : s.polys[static_cast<std::size_t>(i)].terms()) scale += std::abs(c) * std::abs(m.eval(x));
      if (std::abs(det - p) > 1e-10 * std::max(scale, 1e-300)) {
        throw InvalidArgument("det W_" + std::to_string(i + 1) + " does not reproduce p_" + std::to_string(i + 1));
      }
    }
  }
}

std::vector<CMatrix> determinantal_representation_quadratic(const MultiPoly& p) {
  const int d = p.nvars();
  int lead = -1;
  cplx a = 0.0;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > 2) throw UnsupportedShape("polynomial has degree above two");
    if (m.degree() < 2) continue;
    int var = -1;
    for (int j = 0; j < d; ++j) {
      if (m.exps[static_cast<std::size_t>(j)] == 2) var = j;
    }
    if (var < 0 || lead >= 0) throw UnsupportedShape("quadratic part must be a single square a*x_i^2");
    lead = var;
    a = c;
  }
  if (lead < 0) throw UnsupportedShape("polynomial has no square term");

  std::vector<CMatrix> V(static_cast<std::size_t>(d + 1), CMatrix::Zero(2, 2));
  V[0](0, 1) = p.coeff(Monomial::one(d));
  V[0](1, 0) = -1.0;
  for (int j = 0; j < d; ++j) {
    CMatrix& Vj = V[static_cast<std::size_t>(j + 1)];
    Vj(0, 1) = -p.coeff(Monomial::var(d, j));
    if (j == lead) {
      Vj(0, 0) = -a;
      Vj(1, 1) = -1.0;
    }
  }
  return V;
}

MultiParamEig mep_from_system(const PolySystem& s) {
  s.validate();
  MultiParamEig mep;
  mep.d = s.d;
  for (const auto& p : s.polys) mep.V.push_back(determinantal_representation_quadratic(p));
  return mep;
}

OperatorDeterminants operator_determinants(const MultiParamEig& mep) {
  mep.validate();
  const int d = mep.d;
  std::vector<std::vector<CMatrix>> blocks(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) blocks[static_cast<std::size_t>(i)].push_back(mep.V[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)]);
  }
  OperatorDeterminants out;
  out.delta0 = block_operator_determinant(blocks);
  for (int k = 0; k < d; ++k) {
    auto bk = blocks;
    for (int i = 0; i < d; ++i) bk[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = mep.V[static_cast<std::size_t>(i)][0];
    out.delta.push_back(block_operator_determinant(bk));
  }
  return out;
}

}  // namespace polylab
