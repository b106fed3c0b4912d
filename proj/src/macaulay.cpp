#include "polylab/macaulay.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "polylab/error.hpp"

namespace polylab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

MultiPoly linear_poly(int d, const CVector& c) {
  MultiPoly::TermMap terms{{Monomial::one(d), c(0)}};
  for (int i = 0; i < d; ++i) terms[Monomial::var(d, i)] += c(i + 1);
  return MultiPoly(d, std::move(terms));
}

}  // namespace

std::string MacaulayRow::label() const {
  const std::string m = multiplier.degree() == 0 ? "" : multiplier.label() + "*";
  return m + (poly < 0 ? std::string("h") : "p" + std::to_string(poly + 1));
}

MacaulayMatrix macaulay_hat(const PolySystem& s, int degree, const MonomialOrder& order) {
  s.validate();
  MacaulayMatrix out;
  out.degree = degree;
  out.col_labels = monomials_up_to(degree, s.d, order);
  const auto col = label_index(out.col_labels);
  for (int i = 0; i < s.d; ++i) {
    const int room = degree - s.polys[static_cast<std::size_t>(i)].total_degree();
    if (room < 0) continue;
    for (const auto& m : monomials_up_to(room, s.d, order)) out.row_labels.push_back({i, m});
  }
  out.mat = CMatrix::Zero(static_cast<Eigen::Index>(out.row_labels.size()),
                          static_cast<Eigen::Index>(out.col_labels.size()));
  for (std::size_t r = 0; r < out.row_labels.size(); ++r) {
    const auto& row = out.row_labels[r];
    for (const auto& [m, c] : s.polys[static_cast<std::size_t>(row.poly)].terms()) {
      out.mat(static_cast<Eigen::Index>(r), col.at(m * row.multiplier)) = c;
    }
  }
  return out;
}

CMatrix QuotientBasis::rows(std::span<const Monomial> monomials) const {
  const auto idx = label_index(labels);
  CMatrix out(static_cast<Eigen::Index>(monomials.size()), N.cols());
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    auto it = idx.find(monomials[k]);
    if (it == idx.end()) throw InvalidArgument("monomial " + monomials[k].label() + " exceeds degree rho");
    out.row(static_cast<Eigen::Index>(k)) = N.row(it->second);
  }
  return out;
}

std::vector<Monomial> choose_basis(const CMatrix& N, std::span<const Monomial> labels, int max_degree, int r) {
  std::vector<Monomial> candidates;
  std::vector<Eigen::Index> cand_rows;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].degree() <= max_degree) {
      candidates.push_back(labels[k]);
      cand_rows.push_back(static_cast<Eigen::Index>(k));
    }
  }
  if (static_cast<int>(candidates.size()) < r) throw BasisSingular("fewer candidate monomials than roots");
  CMatrix C(N.cols(), static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t k = 0; k < cand_rows.size(); ++k) C.col(static_cast<Eigen::Index>(k)) = N.row(cand_rows[k]).transpose();
  Eigen::ColPivHouseholderQR<CMatrix> qr(C);
  const auto& R = qr.matrixR();
  const double lead = std::abs(R(0, 0));
  const double last = std::abs(R(r - 1, r - 1));
  if (lead == 0.0 || last <= 10.0 * static_cast<double>(C.cols()) * kEps * lead) {
    throw BasisSingular("candidate basis rows are rank deficient");
  }
  std::vector<Monomial> basis;
  const auto& perm = qr.colsPermutation().indices();
  for (int k = 0; k < r; ++k) basis.push_back(candidates[static_cast<std::size_t>(perm(k))]);
  return basis;
}

std::vector<Monomial> choose_basis(const MacaulayMatrix& hat, int r) {
  const NullSpace ns = null_space(hat.mat, r);
  return choose_basis(ns.basis, hat.col_labels, hat.degree - 1, r);
}

QuotientBasis quotient_basis(const PolySystem& s, const MonomialOrder& order,
                             const std::optional<std::vector<Monomial>>& basis) {
  const int deg = rho(s);
  const auto r = static_cast<int>(bezout_count(s));
  const MacaulayMatrix hat = macaulay_hat(s, deg, order);
  const Eigen::Index ncols = hat.mat.cols();
  const Eigen::Index rank = ncols - r;
  if (rank < 0 || hat.mat.rows() < rank) throw NullityMismatch("Macaulay matrix cannot have nullity equal to the Bezout count");

  const SvdResult sv = svd(hat.mat);
  const auto& s_vals = sv.singular_values;
  const double smax = s_vals.size() > 0 ? s_vals(0) : 0.0;
  auto sval = [&](Eigen::Index k) { return k < s_vals.size() ? s_vals(k) : 0.0; };
  const double last_nonzero = rank > 0 ? sval(rank - 1) : std::numeric_limits<double>::infinity();
  const double first_null = sval(rank);
  if (last_nonzero <= 10.0 * static_cast<double>(ncols) * kEps * smax) {
    throw NullityMismatch("numerical nullity of M_rho exceeds the Bezout count");
  }
  if (first_null > std::sqrt(kEps) * smax) {
    throw NullityMismatch("numerical nullity of M_rho is below the Bezout count");
  }

  QuotientBasis q;
  q.labels = hat.col_labels;
  q.N = sv.V.rightCols(r);
  q.sigma_min_hat = rank > 0 ? last_nonzero : 0.0;
  q.nullspace_gap = first_null == 0.0 ? std::numeric_limits<double>::infinity() : last_nonzero / first_null;
  q.basis = basis ? *basis : choose_basis(q.N, q.labels, deg - 1, r);
  if (static_cast<int>(q.basis.size()) != r) throw InvalidArgument("basis size differs from the Bezout count");
  q.basis_condition = condition_number(q.rows(q.basis));
  return q;
}

MultiPoly MacaulayPencil::h_alpha() const { return linear_poly(static_cast<int>(alpha.size()) - 1, alpha); }
MultiPoly MacaulayPencil::h_beta() const { return linear_poly(static_cast<int>(beta.size()) - 1, beta); }

MacaulayPencil macaulay_pencil(const PolySystem& s, Rng& rng, const MonomialOrder& order) {
  const int deg = rho(s);
  const MacaulayMatrix hat = macaulay_hat(s, deg, order);
  QuotientBasis q = quotient_basis(s, order);
  const auto col = label_index(hat.col_labels);
  const Eigen::Index n = hat.mat.cols();
  const auto r = static_cast<Eigen::Index>(q.basis.size());
  const Eigen::Index p_rows = n - r;
  if (hat.mat.rows() < p_rows) throw NullityMismatch("Macaulay pencil is not square");
  // Beyond two variables the polynomial rows are linearly dependent; keep an
  // independent subset chosen by column-pivoted QR of the transpose.
  std::vector<Eigen::Index> kept_rows;
  if (hat.mat.rows() == p_rows) {
    for (Eigen::Index k = 0; k < p_rows; ++k) kept_rows.push_back(k);
  } else {
    const Eigen::ColPivHouseholderQR<CMatrix> qr(hat.mat.transpose());
    for (Eigen::Index k = 0; k < p_rows; ++k) kept_rows.push_back(qr.colsPermutation().indices()(k));
    std::sort(kept_rows.begin(), kept_rows.end());
  }

  for (int attempt = 0; attempt < 3; ++attempt) {
    MacaulayPencil pen;
    pen.alpha = CVector(s.d + 1);
    pen.beta = CVector(s.d + 1);
    for (int k = 0; k <= s.d; ++k) pen.alpha(k) = rng.complex_normal();
    for (int k = 0; k <= s.d; ++k) pen.beta(k) = rng.complex_normal();

    pen.gep.A = CMatrix::Zero(n, n);
    pen.gep.B = CMatrix::Zero(n, n);
    pen.gep.col_labels = hat.col_labels;
    pen.gep.row_labels.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < p_rows; ++k) {
      pen.gep.A.row(k) = hat.mat.row(kept_rows[static_cast<std::size_t>(k)]);
      pen.gep.row_labels.push_back(hat.row_labels[static_cast<std::size_t>(kept_rows[static_cast<std::size_t>(k)])].multiplier);
    }
    for (Eigen::Index k = 0; k < r; ++k) {
      const Monomial& b = q.basis[static_cast<std::size_t>(k)];
      const Eigen::Index row = p_rows + k;
      pen.gep.A(row, col.at(b)) = pen.alpha(0);
      pen.gep.B(row, col.at(b)) = pen.beta(0);
      for (int i = 0; i < s.d; ++i) {
        pen.gep.A(row, col.at(b.times_var(i))) = pen.alpha(i + 1);
        pen.gep.B(row, col.at(b.times_var(i))) = pen.beta(i + 1);
      }
      pen.gep.row_labels.push_back(b);
    }
    if (!is_regular_pencil(pen.gep)) continue;

    pen.p_rows = p_rows;
    pen.kept_h_monomials = q.basis;
    for (const auto& m : monomials_up_to(deg - 1, s.d, order)) {
      if (std::find(q.basis.begin(), q.basis.end(), m) == q.basis.end()) pen.dropped_h_monomials.push_back(m);
    }
    pen.quotient = std::move(q);
    return pen;
  }
  throw SingularPencil("Macaulay pencil singular after three draws of (alpha, beta)");
}

double smallest_singular_hat(const PolySystem& s) {
  const MacaulayMatrix hat = macaulay_hat(s, rho(s), MonomialOrder{});
  return sigma_min(hat.mat);
}

void write_macaulay_csv(const MacaulayMatrix& m, std::ostream& os) {
  os << "row";
  for (const auto& c : m.col_labels) os << "," << c.label();
  os << "\n" << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.mat.rows(); ++r) {
    os << m.row_labels[static_cast<std::size_t>(r)].label();
    for (Eigen::Index c = 0; c < m.mat.cols(); ++c) {
      const cplx v = m.mat(r, c);
      os << ",";
      if (v.imag() == 0.0) {
        os << v.real();
      } else {
        os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
      }
    }
    os << "\n";
  }
}

}  // namespace polylab
