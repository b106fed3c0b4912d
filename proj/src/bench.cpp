#include "polylab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "polylab/error.hpp"
#include "polylab/solvers.hpp"

namespace polylab {
namespace {

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> xs;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int k = 0; k <= n; ++k) xs.push_back(lo + step * k);
  return xs;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

double digits_of_accuracy(double err) {
  if (err == 0.0) return 16.0;
  if (!(err >= 0.0)) return 0.0;
  return std::clamp(-std::log10(err), 0.0, 16.0) + 0.0;
}

std::string to_string(Axis a) {
  switch (a) {
    case Axis::log_sigma: return "log_sigma";
    case Axis::neg_log_c: return "neg_log_c";
    case Axis::dim: return "d";
  }
  return "unknown";
}

Axis parse_axis(const std::string& name) {
  for (Axis a : {Axis::log_sigma, Axis::neg_log_c, Axis::dim}) {
    if (to_string(a) == name) return a;
  }
  if (name == "dim") return Axis::dim;
  throw InvalidArgument("unknown axis '" + name + "'");
}

std::string axis_label(Axis a) {
  switch (a) {
    case Axis::log_sigma: return "log10(sigma)";
    case Axis::neg_log_c: return "-log10(c)";
    case Axis::dim: return "d";
  }
  return "";
}

void SweepSpec::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (xs.empty()) throw InvalidArgument("sweep has no axis values");
  for (double x : xs) {
    if (!std::isfinite(x)) throw InvalidArgument("axis values must be finite");
    if (axis == Axis::dim && (x < 1 || x != std::round(x))) throw InvalidArgument("d axis values must be positive integers");
  }
  if ((axis == Axis::neg_log_c) != (family == Family::hypercube) && axis != Axis::dim) {
    throw InvalidArgument("the -log c axis goes with the hypercube family, log sigma with the others");
  }
  if (method == Method::gb && family != Family::cyclic_squares) throw InvalidArgument("gb sweeps use cyclic_squares");
  if (method == Method::rur && family != Family::hypercube) throw InvalidArgument("rur sweeps use hypercube");
  for (double x : xs) family_at(x).validate();
}

FamilySpec SweepSpec::family_at(double x) const {
  FamilySpec fs;
  fs.family = family;
  fs.d = axis == Axis::dim ? static_cast<int>(std::lround(x)) : d;
  switch (axis) {
    case Axis::log_sigma: fs.param = std::pow(10.0, x); break;
    case Axis::neg_log_c: fs.param = std::pow(10.0, -x); break;
    case Axis::dim: fs.param = param; break;
  }
  if (shift) fs.shift = Point(static_cast<std::size_t>(fs.d), *shift);
  return fs;
}

double run_trial(const SweepSpec& spec, std::size_t point, int trial) {
  const FamilySpec fs = spec.family_at(spec.xs[point]);
  Rng rng = Rng(spec.seed).split(point).split(static_cast<std::uint64_t>(trial));
  try {
    switch (spec.method) {
      case Method::gb:
        return solve_gb_elimination_example(fs.d, fs.param, 0, spec.shift.value_or(0.0)).error;
      case Method::rur: {
        const Eigen::VectorXd u = random_unit_vector(fs.d, rng);
        const PolySystem s = generate(fs, rng);
        return solve_rur(s, std::span<const double>(u.data(), static_cast<std::size_t>(u.size())),
                         RurMode::exact_roots, rng, spec.balance)
            .error;
      }
      default: {
        const PolySystem s = generate(fs, rng);
        SolveOptions opts;
        opts.polish = spec.polish;
        return true_root_error(solve(s, spec.method, rng, opts), designated_root(fs));
      }
    }
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

int default_thread_count() {
  if (const char* env = std::getenv("POLYLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const std::size_t npts = spec.xs.size();
  const auto ntr = static_cast<std::size_t>(spec.trials);
  std::vector<double> digits(npts * ntr, 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < digits.size(); k = next++) {
      digits[k] = digits_of_accuracy(run_trial(spec, k / ntr, static_cast<int>(k % ntr)));
    }
  };
  const int nthreads = std::max(1, std::min<int>(threads > 0 ? threads : default_thread_count(),
                                                 static_cast<int>(digits.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<SweepRecord> out;
  for (std::size_t p = 0; p < npts; ++p) {
    const FamilySpec fs = spec.family_at(spec.xs[p]);
    SweepRecord r;
    r.x = spec.xs[p];
    r.median_digits = median(std::vector<double>(digits.begin() + static_cast<std::ptrdiff_t>(p * ntr),
                                                 digits.begin() + static_cast<std::ptrdiff_t>((p + 1) * ntr)));
    r.theory_digits = theory_digits(spec.method, spec.family, fs.d, fs.param);
    r.stable_digits = stable_digits(spec.family, fs.d, fs.param);
    r.n_trials = spec.trials;
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> figure_ids() { return {"1c", "1d", "1e", "1f", "1g", "2", "3", "4", "5"}; }

std::vector<SweepSpec> figure_specs(const std::string& figure, int trials, std::uint64_t seed) {
  SweepSpec s;
  s.trials = trials;
  s.seed = seed;
  s.xs = grid(-8.0, 0.0, 0.5);
  auto with = [&](std::string id, Method m, Family f) {
    SweepSpec out = s;
    out.id = std::move(id);
    out.method = m;
    out.family = f;
    return out;
  };
  if (figure == "1c") {
    auto sp = with("1c", Method::gb, Family::cyclic_squares);
    sp.shift = 1.0 / 3.0;
    return {sp};
  }
  if (figure == "1d") {
    auto sp = with("1d", Method::rur, Family::hypercube);
    sp.axis = Axis::neg_log_c;
    sp.balance = false;
    return {sp};
  }
  if (figure == "1e" || figure == "1f" || figure == "1g") {
    const Method m = figure == "1e" ? Method::mep : figure == "1f" ? Method::nf : Method::macaulay;
    auto sp = with(figure, m, Family::orthogonal);
    sp.shift = 1.0 / 3.0;
    return {sp};
  }
  if (figure == "2") {
    auto sp = with("2", Method::gb, Family::cyclic_squares);
    sp.axis = Axis::dim;
    sp.xs = grid(2.0, 8.0, 1.0);
    sp.param = 0.5;
    sp.shift = 1.0 / 3.0;
    return {sp};
  }
  if (figure == "3") {
    auto sp = with("3", Method::mep, Family::permutation);
    sp.axis = Axis::dim;
    sp.xs = grid(2.0, 6.0, 1.0);
    sp.param = 1e-2;
    sp.shift = 1.0 / 3.0;
    return {sp};
  }
  if (figure == "4") {
    auto a = with("4a", Method::nf, Family::notdev2d);
    auto b = with("4b", Method::macaulay, Family::notdev2d);
    a.shift = b.shift = 1.0 / 3.0;
    return {a, b};
  }
  if (figure == "5") {
    // sigma = 1 puts roots at infinity, so the grid stops one step short.
    auto sp = with("5", Method::nf, Family::notdev3d);
    sp.d = 3;
    sp.xs = grid(-8.0, -0.5, 0.5);
    return {sp};
  }
  throw InvalidArgument("unknown figure '" + figure + "'");
}

double fitted_slope(const std::vector<SweepRecord>& records, double xmin, double xmax) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : records) {
    if (r.x < xmin - 1e-12 || r.x > xmax + 1e-12) continue;
    sx += r.x;
    sy += r.median_digits;
    sxx += r.x * r.x;
    sxy += r.x * r.median_digits;
    ++n;
  }
  if (n < 2) throw InvalidArgument("slope needs at least two points in range");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
  os << "x,median_digits,theory_digits,stable_digits,n_trials\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", r.x, r.median_digits, r.theory_digits,
                  r.stable_digits, r.n_trials);
    os << buf;
  }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,median_digits", 0) != 0) throw InvalidArgument("missing sweep CSV header");
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    SweepRecord r;
    char comma = 0;
    std::istringstream ss(line);
    if (!(ss >> r.x >> comma >> r.median_digits >> comma >> r.theory_digits >> comma >> r.stable_digits >> comma >>
          r.n_trials)) {
      throw InvalidArgument("malformed sweep CSV row: " + line);
    }
    out.push_back(r);
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_csv(records, out);
}

void write_svg(const std::vector<SweepRecord>& records, std::ostream& os, const std::string& title,
               const std::string& xlabel) {
  const double W = 640, H = 420, left = 60, right = 20, top = 40, bottom = 50;
  double xmin = 0, xmax = 1;
  if (!records.empty()) {
    xmin = xmax = records.front().x;
    for (const auto& r : records) {
      xmin = std::min(xmin, r.x);
      xmax = std::max(xmax, r.x);
    }
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double y) { return top + (16.0 - std::clamp(y, 0.0, 16.0)) / 16.0 * (H - top - bottom); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
     << "</text>\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
     << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int y = 0; y <= 16; y += 2) {
    os << "<line x1=\"" << left - 4 << "\" x2=\"" << left << "\" y1=\"" << fmt(py(y)) << "\" y2=\"" << fmt(py(y))
       << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << fmt(py(y) + 4)
       << "\" text-anchor=\"end\">" << y << "</text>\n";
  }
  const double span = xmax - xmin;
  const double step = span <= 10 ? 1.0 : std::ceil(span / 10.0);
  for (double x = std::ceil(xmin / step) * step; x <= xmax + 1e-9; x += step) {
    os << "<line x1=\"" << fmt(px(x)) << "\" x2=\"" << fmt(px(x)) << "\" y1=\"" << H - bottom << "\" y2=\""
       << H - bottom + 4 << "\" stroke=\"black\"/><text x=\"" << fmt(px(x)) << "\" y=\"" << H - bottom + 18
       << "\" text-anchor=\"middle\">" << x << "</text>\n";
  }
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
     << xml_escape(xlabel) << "</text>\n"
     << "<text transform=\"translate(16," << (top + H - bottom) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">Digits of Accuracy</text>\n";

  auto polyline = [&](auto get, const char* color, const char* dash, const char* name) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"" << dash << " points=\"";
    for (const auto& r : records) os << fmt(px(r.x)) << "," << fmt(py(get(r))) << " ";
    os << "\"><title>" << name << "</title></polyline>\n";
  };
  polyline([](const SweepRecord& r) { return r.stable_digits; }, "teal", " stroke-dasharray=\"4 3\"", "Stable performance");
  polyline([](const SweepRecord& r) { return r.theory_digits; }, "red", "", "Theory prediction");
  os << "<g fill=\"blue\"><title>Practical performance</title>\n";
  for (const auto& r : records) {
    os << "<circle cx=\"" << fmt(px(r.x)) << "\" cy=\"" << fmt(py(r.median_digits)) << "\" r=\"3.5\"/>\n";
  }
  os << "</g>\n";
  const double lx = left + 12, ly = top + 14;
  os << "<g font-size=\"11\">"
     << "<line x1=\"" << lx << "\" x2=\"" << lx + 20 << "\" y1=\"" << ly << "\" y2=\"" << ly
     << "\" stroke=\"teal\" stroke-width=\"2\" stroke-dasharray=\"4 3\"/><text x=\"" << lx + 26 << "\" y=\"" << ly + 4
     << "\">Stable performance</text>"
     << "<line x1=\"" << lx << "\" x2=\"" << lx + 20 << "\" y1=\"" << ly + 16 << "\" y2=\"" << ly + 16
     << "\" stroke=\"red\" stroke-width=\"2\"/><text x=\"" << lx + 26 << "\" y=\"" << ly + 20
     << "\">Theory prediction</text>"
     << "<circle cx=\"" << lx + 10 << "\" cy=\"" << ly + 32 << "\" r=\"3.5\" fill=\"blue\"/><text x=\"" << lx + 26
     << "\" y=\"" << ly + 36 << "\">Practical performance</text></g>\n";
  os << "</svg>\n";
}

void emit_svg(const std::vector<SweepRecord>& records, const std::string& path, const std::string& title,
              const std::string& xlabel) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_svg(records, out, title, xlabel);
}

}  // namespace polylab
