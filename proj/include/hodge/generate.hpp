#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/gauge.hpp"
#include "hodge/random.hpp"

namespace hodge {

/// Degrees lo .. lo + w with w in [1, max_width]; end degrees are nonzero,
/// inner degrees may be empty.
GradedSpace random_space(Rng& rng, int max_width, int max_dim);

/// Random square-zero map of degree +1 or -1 with random ranks, conjugated
/// into a generic basis.
GradedMap random_differential(Rng& rng, const GradedSpace& space, int degree);

/// Random acyclic complex (K, d_K) of degree -1 on degrees lo..hi.
GradedMap random_acyclic(Rng& rng, int lo, int hi, int max_dim);

/// Random isotopy-type series without constant term.
OperatorSeries random_series(Rng& rng, const GradedSpace& space);

struct GeneratedInstance {
  Multicomplex m;
  std::string profile;  // "a", "b" or "c"
  std::uint64_t seed = 0;
  std::string label;
  /// Profile a: the gauge used to build m.
  std::optional<OperatorSeries> gauge;
  /// Whether the construction guarantees page-1 degeneration.
  bool expect_degenerate = true;
};

/// (a) gauge orbit e^R (d, 0, ...) e^{-R} of a random square-zero d.
GeneratedInstance generate_gauge_orbit(std::uint64_t seed);
/// (b) (H, 0, D_1 != 0) x (K, d_K), conjugated by e^R and a random strict
/// automorphism; never degenerates.
GeneratedInstance generate_obstructed(std::uint64_t seed);
/// (c) entry seed % library_size() of the hand library.
GeneratedInstance generate_library(std::uint64_t seed);
std::size_t library_size();

/// Dispatch on "a", "b", "c"; throws std::invalid_argument otherwise.
GeneratedInstance generate(const std::string& profile, std::uint64_t seed);

/// `count` instances cycling a, b, a, c, ... with seeds base, base+1, ...
std::vector<GeneratedInstance> generate_corpus(std::size_t count, std::uint64_t base_seed);

}  // namespace hodge
