#pragma once

#include <cstdint>
#include <random>

#include "hodge/exactla.hpp"

namespace hodge {

/// Seeded generator whose draws depend only on the seed (no
/// implementation-defined distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  /// True with probability num/den.
  bool chance(int num, int den);

  /// rows x cols with entries in [lo, hi], each nonzero with probability
  /// num/den.
  Matrix sparse_matrix(std::size_t rows, std::size_t cols, int lo, int hi, int num, int den);
  /// Product of random unit lower and unit upper triangular matrices with
  /// small integer entries, times a random sign/scale diagonal.
  Matrix invertible(std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hodge
