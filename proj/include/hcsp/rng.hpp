#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hcsp {

// Deterministic RNG wrapper. All draws go through hand-rolled mappings of the
// mt19937_64 stream (the standard distributions are implementation-defined,
// which would break seed reproducibility across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant at the
  // range sizes used here.
  int uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; never returns 0.
  double uniform01_open_low() { return 1.0 - uniform01(); }

  bool chance(double p) { return uniform01() < p; }

  // Roulette-wheel index over positive weights.
  std::size_t pick_weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double x = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      x -= weights[i];
      if (x < 0.0) return i;
    }
    return weights.size() - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t fork_seed() { return next(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace hcsp
