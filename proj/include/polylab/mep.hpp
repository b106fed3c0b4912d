#pragma once

#include <vector>

#include "polylab/poly.hpp"
#include "polylab/rng.hpp"

namespace polylab {

/// d linear matrix polynomials W_i(x) = V_i0 - sum_j x_j V_ij, with V_ij of size n_i x n_i.
struct MultiParamEig {
  int d = 0;
  std::vector<std::vector<CMatrix>> V;  // V[i][0..d]

  Eigen::Index n(int i) const { return V[static_cast<std::size_t>(i)][0].rows(); }
  CMatrix W(int i, std::span<const cplx> x) const;
  void validate() const;
  /// Throws InvalidArgument unless det W_i matches p_i at 20 random points (1e-10 relative).
  void check_represents(const PolySystem& s, Rng& rng) const;
};

/// 2x2 representation [[a x_i, l(x) + c], [-1, x_i]] of p = a x_i^2 + l(x) + c.
/// Returns {V_0, V_1, ..., V_d}. Throws UnsupportedShape for any other quadratic part.
std::vector<CMatrix> determinantal_representation_quadratic(const MultiPoly& p);

/// Applies determinantal_representation_quadratic to every polynomial.
MultiParamEig mep_from_system(const PolySystem& s);

/// Delta_0 = det[V_ij] and Delta_i with block column i replaced by V_k0.
struct OperatorDeterminants {
  CMatrix delta0;
  std::vector<CMatrix> delta;  // delta[i] for coordinate i
};

OperatorDeterminants operator_determinants(const MultiParamEig& mep);

}  // namespace polylab
