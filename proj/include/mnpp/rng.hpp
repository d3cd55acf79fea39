#pragma once

#include <array>
#include <cstdint>

namespace mnpp {

/// SplitMix64; used to seed Xoshiro256 and to derive per-instance seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
///
/// Part of the instance format contract: identical seeds must give identical
/// instances on every platform, so no standard-library distribution is used.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n), rejection-sampled (no modulo bias).
  std::uint64_t below(std::uint64_t n);

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Seed for (graph, draw) of a suite: SplitMix64 chained over the inputs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t graph, std::uint64_t draw);

}  // namespace mnpp
