#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace polylab {

/// Seeded random source passed explicitly to every randomized routine.
///
/// `split` derives an independent child stream from the parent seed and a
/// stream index, so parallel trials can be replayed in any order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1);

  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  double uniform();                      // [0, 1)
  double normal();                       // N(0, 1)
  std::complex<double> complex_normal();  // (N(0,1) + i N(0,1)) / sqrt(2)
  std::size_t index(std::size_t n);      // uniform in [0, n)

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace polylab
