#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polylab/conditioning.hpp"
#include "polylab/families.hpp"

namespace polylab {

/// clamp(-log10(err), 0, 16), with err = 0 mapped to 16.
double digits_of_accuracy(double err);

enum class Axis { log_sigma, neg_log_c, dim };

std::string to_string(Axis a);
Axis parse_axis(const std::string& name);

struct SweepSpec {
  std::string id;
  Method method = Method::nf;
  Family family = Family::orthogonal;
  Axis axis = Axis::log_sigma;
  std::vector<double> xs;  // log10(sigma), -log10(c), or d
  int d = 2;               // used unless axis == dim
  double param = 1e-2;     // sigma or c when axis == dim
  int trials = 100;
  std::uint64_t seed = 1;
  bool polish = false;
  std::optional<double> shift;  // same shift in every coordinate
  /// Companion balancing for the univariate methods.
  bool balance = true;

  void validate() const;
  /// Family parameters at axis value x.
  FamilySpec family_at(double x) const;
};

struct SweepRecord {
  double x = 0.0;
  double median_digits = 0.0;
  double theory_digits = 0.0;
  double stable_digits = 0.0;
  int n_trials = 0;

  bool operator==(const SweepRecord&) const = default;
};

/// Error of one seeded trial at the designated root; solver failures give +inf.
double run_trial(const SweepSpec& spec, std::size_t point, int trial);

/// Threads: `threads` if positive, else POLYLAB_THREADS, else hardware concurrency.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int threads = 0);

int default_thread_count();

/// Sweep specs for a figure id: 1c 1d 1e 1f 1g 2 3 4 5 (figure 4 has two panels).
std::vector<SweepSpec> figure_specs(const std::string& figure, int trials = 100, std::uint64_t seed = 1);
std::vector<std::string> figure_ids();

/// Least-squares slope of median_digits against x.
double fitted_slope(const std::vector<SweepRecord>& records, double xmin, double xmax);

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os);
std::vector<SweepRecord> read_csv(std::istream& is);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

void write_svg(const std::vector<SweepRecord>& records, std::ostream& os, const std::string& title,
               const std::string& xlabel);
void emit_svg(const std::vector<SweepRecord>& records, const std::string& path, const std::string& title,
              const std::string& xlabel);

std::string axis_label(Axis a);

}  // namespace polylab
