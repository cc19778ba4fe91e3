#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "paedgl/errors.hpp"

namespace paedgl {

// splitmix64 finalizer; used to derive independent seed streams.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic RNG. mt19937_64 output is pinned by the standard; the
// derived draws below are implemented by hand so every stream is
// bit-reproducible across compilers (std::uniform_*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    if (!(lo < hi)) throw ArgumentError("uniform: empty interval");
    return lo + (hi - lo) * uniform01();
  }

  // Uniform index in [0, n) via rejection sampling (no modulo bias).
  std::size_t index(std::size_t n) {
    if (n == 0) throw ArgumentError("index: n must be positive");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % bound);
  }

  // Integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    if (lo > hi) throw ArgumentError("range: lo > hi");
    return lo + static_cast<long long>(
                    index(static_cast<std::size_t>(hi - lo + 1)));
  }

  // Index drawn with probability weights[i] / sum(weights).
  std::size_t weighted_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw ArgumentError("weighted_index: negative weight");
      total += w;
    }
    if (total <= 0.0) throw ArgumentError("weighted_index: zero total weight");
    double u = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;  // guard against accumulated rounding
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paedgl
