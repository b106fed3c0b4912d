#include "polylab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polylab/error.hpp"

namespace polylab {
namespace {

constexpr double kDropBelow = 1e-300;

// Neumaier summation, applied to the real and imaginary parts separately.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_part(v.real(), re_, re_c_);
    add_part(v.imag(), im_, im_c_);
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double v, double& sum, double& comp) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

cplx ipow(cplx x, int e) {
  cplx r = 1.0;
  cplx b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string var_name(int nvars, int i) {
  if (nvars <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> e) : exps(std::move(e)) {
  for (int v : exps) {
    if (v < 0) throw InvalidArgument("monomial exponents must be non-negative");
  }
}

Monomial Monomial::one(int nvars) { return Monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0)); }

Monomial Monomial::var(int nvars, int i) {
  Monomial m = one(nvars);
  m.exps.at(static_cast<std::size_t>(i)) = 1;
  return m;
}

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.nvars() != nvars()) throw DimensionMismatch("monomial variable counts differ");
  Monomial r = *this;
  for (std::size_t k = 0; k < exps.size(); ++k) r.exps[k] += other.exps[k];
  return r;
}

Monomial Monomial::times_var(int i) const {
  Monomial r = *this;
  r.exps.at(static_cast<std::size_t>(i)) += 1;
  return r;
}

cplx Monomial::eval(std::span<const cplx> x) const {
  if (x.size() != exps.size()) throw DimensionMismatch("point dimension differs from monomial");
  cplx r = 1.0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] != 0) r *= ipow(x[k], exps[k]);
  }
  return r;
}

std::string Monomial::label() const {
  std::string out;
  for (int i = 0; i < nvars(); ++i) {
    const int e = exps[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += var_name(nvars(), i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(std::vector<int> permutation) : perm_(std::move(permutation)) {
  std::vector<int> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<int>(k)) throw InvalidArgument("monomial order needs a permutation");
  }
}

int MonomialOrder::variable_at(int k) const {
  return perm_.empty() ? k : perm_[static_cast<std::size_t>(k)];
}

bool MonomialOrder::before(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  for (int k = 0; k < a.nvars(); ++k) {
    const auto v = static_cast<std::size_t>(variable_at(k));
    if (a.exps[v] != b.exps[v]) return a.exps[v] > b.exps[v];
  }
  return false;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw InvalidArgument("polynomial needs at least one variable");
}

MultiPoly::MultiPoly(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars < 1) throw InvalidArgument("polynomial needs at least one variable");
  for (const auto& [m, c] : terms_) {
    if (m.nvars() != nvars_) throw DimensionMismatch("term exponent length differs from nvars");
  }
  normalize();
}

MultiPoly MultiPoly::constant(int nvars, cplx c) {
  return MultiPoly(nvars, TermMap{{Monomial::one(nvars), c}});
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  return MultiPoly(nvars, TermMap{{Monomial::var(nvars, i), 1.0}});
}

MultiPoly MultiPoly::monomial(const Monomial& m, cplx c) { return MultiPoly(m.nvars(), TermMap{{m, c}}); }

void MultiPoly::normalize() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kDropBelow; });
}

int MultiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.degree());
  return deg;
}

cplx MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{0.0} : it->second;
}

double MultiPoly::max_abs_coeff() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

cplx MultiPoly::eval(std::span<const cplx> x, const MonomialOrder& order) const {
  if (static_cast<int>(x.size()) != nvars_) throw DimensionMismatch("point dimension differs from nvars");
  std::vector<const TermMap::value_type*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& kv : terms_) sorted.push_back(&kv);
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto* a, const auto* b) { return order.before(a->first, b->first); });
  CompensatedSum sum;
  for (const auto* kv : sorted) sum.add(kv->second * kv->first.eval(x));
  return sum.value();
}

MultiPoly MultiPoly::differentiate(int i) const {
  if (i < 0 || i >= nvars_) throw InvalidArgument("variable index out of range");
  TermMap out;
  for (const auto& [m, c] : terms_) {
    const int e = m.exps[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    Monomial dm = m;
    dm.exps[static_cast<std::size_t>(i)] -= 1;
    out[dm] += c * static_cast<double>(e);
  }
  return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::translate(std::span<const cplx> s) const {
  if (static_cast<int>(s.size()) != nvars_) throw DimensionMismatch("shift dimension differs from nvars");
  TermMap out;
  for (const auto& [m, c] : terms_) {
    // Expand prod_j (x_j - s_j)^{e_j} one variable at a time.
    TermMap partial{{Monomial::one(nvars_), c}};
    for (int j = 0; j < nvars_; ++j) {
      const int e = m.exps[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      TermMap next;
      for (const auto& [pm, pc] : partial) {
        for (int k = 0; k <= e; ++k) {
          Monomial nm = pm;
          nm.exps[static_cast<std::size_t>(j)] += k;
          next[nm] += pc * binomial(e, k) * ipow(-s[static_cast<std::size_t>(j)], e - k);
        }
      }
      partial = std::move(next);
    }
    for (const auto& [pm, pc] : partial) out[pm] += pc;
  }
  return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::scaled(cplx c) const {
  TermMap out = terms_;
  for (auto& [m, v] : out) v *= c;
  return MultiPoly(nvars_, std::move(out));
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  TermMap out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == degree) out.emplace(m, c);
  }
  return MultiPoly(nvars_, std::move(out));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  for (const auto& kv : terms_) sorted.push_back(&kv);
  MonomialOrder order;
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto* a, const auto* b) { return order.before(b->first, a->first); });
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto* kv : sorted) {
    if (!first) os << " + ";
    first = false;
    const cplx c = kv->second;
    if (c.imag() == 0.0) {
      os << c.real();
    } else {
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    if (kv->first.degree() > 0) os << "*" << kv->first.label();
  }
  return os.str();
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("adding polynomials in different variable counts");
  MultiPoly::TermMap out = a.terms_;
  for (const auto& [m, c] : b.terms_) out[m] += c;
  return MultiPoly(a.nvars_, std::move(out));
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + b.scaled(-1.0); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("multiplying polynomials in different variable counts");
  MultiPoly::TermMap out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out[ma * mb] += ca * cb;
  }
  return MultiPoly(a.nvars_, std::move(out));
}

// ----------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == cplx{0.0}) c_.pop_back();
}

UniPoly UniPoly::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

cplx UniPoly::coeff(int k) const {
  return (k < 0 || k >= static_cast<int>(c_.size())) ? cplx{0.0} : c_[static_cast<std::size_t>(k)];
}

cplx UniPoly::eval(cplx x) const {
  cplx r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::scaled(cplx s) const {
  std::vector<cplx> c = c_;
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::translate(cplx s) const {
  // Horner in the shifted variable: p(x - s) = (...(c_n (x - s) + c_{n-1})(x - s) + ...).
  UniPoly shift_factor(std::vector<cplx>{-s, 1.0});
  UniPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * shift_factor + UniPoly(std::vector<cplx>{*it});
  return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return UniPoly();
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

// -------------------------------------------------------------- PolySystem

void PolySystem::validate() const {
  if (d < 1) throw InvalidArgument("system dimension must be at least 1");
  if (static_cast<int>(polys.size()) != d) throw DimensionMismatch("system needs exactly d polynomials");
  for (const auto& p : polys) {
    if (p.nvars() != d) throw DimensionMismatch("polynomial variable count differs from d");
  }
  if (true_roots) {
    const double tol = 1e-10 * (1.0 + coefficient_scale());
    for (const auto& r : *true_roots) {
      if (static_cast<int>(r.size()) != d) throw DimensionMismatch("known root has wrong dimension");
      if (residual(r) > tol) throw NotARoot("listed root does not satisfy the system");
    }
  }
}

double PolySystem::coefficient_scale() const {
  double s = 0.0;
  for (const auto& p : polys) s = std::max(s, p.max_abs_coeff());
  return s;
}

Eigen::VectorXcd PolySystem::eval(std::span<const cplx> x) const {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = polys[static_cast<std::size_t>(i)].eval(x);
  return v;
}

double PolySystem::residual(std::span<const cplx> x) const { return eval(x).norm(); }

PolySystem PolySystem::translated(std::span<const cplx> s) const {
  PolySystem out = *this;
  for (auto& p : out.polys) p = p.translate(s);
  if (out.true_roots) {
    for (auto& r : *out.true_roots) {
      for (std::size_t k = 0; k < r.size(); ++k) r[k] += s[k];
    }
  }
  return out;
}

CMatrix jacobian(const PolySystem& s, std::span<const cplx> x) {
  CMatrix J(s.d, s.d);
  for (int i = 0; i < s.d; ++i) {
    for (int j = 0; j < s.d; ++j) J(i, j) = s.polys[static_cast<std::size_t>(i)].differentiate(j).eval(x);
  }
  return J;
}

int rho(const PolySystem& s) {
  int total = 0;
  for (const auto& p : s.polys) {
    if (p.is_zero()) throw InvalidArgument("rho is undefined for a zero polynomial");
    total += p.total_degree();
  }
  return total - s.d + 1;
}

long long bezout_count(const PolySystem& s) {
  long long n = 1;
  for (const auto& p : s.polys) n *= std::max(p.total_degree(), 0);
  return n;
}

std::vector<Monomial> monomials_up_to(int degree, int d, const MonomialOrder& order) {
  if (degree < 0) throw InvalidArgument("degree must be non-negative");
  std::vector<Monomial> out;
  // Enumerate all exponent vectors with total degree <= degree.
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == d - 1) {
      for (int k = 0; k <= remaining; ++k) {
        e[static_cast<std::size_t>(var)] = k;
        out.emplace_back(e);
      }
      e[static_cast<std::size_t>(var)] = 0;
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, remaining - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.before(a, b); });
  return out;
}

std::map<Monomial, int> label_index(std::span<const Monomial> labels) {
  std::map<Monomial, int> idx;
  for (std::size_t k = 0; k < labels.size(); ++k) idx.emplace(labels[k], static_cast<int>(k));
  return idx;
}

CVector eval_labels(std::span<const Monomial> labels, std::span<const cplx> x) {
  CVector v(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) v(static_cast<Eigen::Index>(k)) = labels[k].eval(x);
  return v;
}

}  // namespace polylab
