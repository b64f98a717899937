#pragma once

// Shared instance builders and independent oracles for the test binaries.

#include <functional>
#include <vector>

#include "hodge/gauge.hpp"
#include "hodge/generate.hpp"
#include "hodge/random.hpp"
#include "hodge/spectral.hpp"
#include "hodge/transfer.hpp"

namespace hodge::testing {

inline GradedSpace space_of(std::initializer_list<std::pair<const int, std::size_t>> dims) {
  return GradedSpace(std::map<int, std::size_t>(dims));
}

inline GradedMap single_block(const GradedSpace& s, int degree, int source_degree, Matrix block) {
  GradedMap f(s, s, degree);
  f.set_block(source_degree, std::move(block));
  return f;
}

/// Random map of the given degree with sparse integer blocks.
inline GradedMap random_map(Rng& rng, const GradedSpace& s, int degree) {
  GradedMap f(s, s, degree);
  for (const auto& [k, n] : s.dims()) {
    const std::size_t rows = s.dim(k + degree);
    if (rows == 0) continue;
    f.set_block(k, rng.sparse_matrix(rows, n, -3, 3, 2, 3));
  }
  return f;
}

/// Dense-ish space on degrees 0..width with dims in [1, max_dim].
inline GradedSpace random_full_space(Rng& rng, int width, int max_dim) {
  std::map<int, std::size_t> dims;
  for (int k = 0; k <= width; ++k) dims[k] = static_cast<std::size_t>(rng.uniform(1, max_dim));
  return GradedSpace(dims);
}

/// Mixed complex with Hodge data: degrees 0..5, R = R_1 z supported on
/// sources 0 and 3 so that all brackets beyond the first vanish.
inline Multicomplex mixed_hodge_instance(std::uint64_t seed) {
  Rng rng(seed);
  const GradedSpace a = random_full_space(rng, 5, 2);
  const GradedMap d = random_differential(rng, a, -1);
  GradedMap r1(a, a, 2);
  r1.set_block(0, rng.sparse_matrix(a.dim(2), a.dim(0), -2, 2, 2, 3));
  r1.set_block(3, rng.sparse_matrix(a.dim(5), a.dim(3), -2, 2, 2, 3));
  OperatorSeries r(a, 0);
  r.set_coeff(1, r1);
  return gauge_construct(d, r);
}

/// Mixed complex (d, delta) built as the direct sum of a minimal piece with
/// delta != 0 and a random acyclic piece, conjugated by a strict
/// automorphism; never has Hodge data.
inline Multicomplex mixed_obstructed_instance(std::uint64_t seed) {
  Rng rng(seed);
  const GradedSpace h = space_of({{0, 1}, {1, 1}, {2, 1}});
  const GradedMap delta = single_block(h, 1, 0, Matrix{{Scalar(rng.uniform(1, 3))}});
  const Multicomplex minimal = Multicomplex::mixed(GradedMap::zero(h, -1), delta);
  const GradedMap dk = random_acyclic(rng, 0, 2, 3);
  const Multicomplex prod = product(minimal, Multicomplex(dk.source(), {dk})).product;
  GradedMap g(prod.space(), prod.space(), 0);
  GradedMap g_inv(prod.space(), prod.space(), 0);
  for (const auto& [k, n] : prod.space().dims()) {
    const Matrix p = rng.invertible(n);
    g.set_block(k, p);
    g_inv.set_block(k, inverse(p));
  }
  return Multicomplex::mixed(g * prod.d() * g_inv, g * prod.delta(1) * g_inv);
}

/// (H, 0, 0, D_2) x (K, d_K) conjugated by g e^R: E^1 has d^1 = 0 but the
/// transferred D'_2 is generically nonzero.
inline Multicomplex d1_zero_instance(std::uint64_t seed) {
  Rng rng(seed);
  std::map<int, std::size_t> hdims;
  for (int k = 0; k <= 4; ++k) hdims[k] = static_cast<std::size_t>(rng.uniform(0, 2));
  hdims[0] = std::max<std::size_t>(hdims[0], 1);
  hdims[3] = std::max<std::size_t>(hdims[3], 1);
  const GradedSpace h(hdims);
  GradedMap d2(h, h, 3);
  for (int k : {0, 1}) d2.set_block(k, rng.sparse_matrix(h.dim(k + 3), h.dim(k), -2, 2, 2, 3));
  if (d2.is_zero()) d2.set_block(0, Matrix::from_entries(h.dim(3), h.dim(0), {{0, 0, Scalar(1)}}));
  const Multicomplex minimal(h, {GradedMap::zero(h, -1), GradedMap::zero(h, 1), d2});
  const GradedMap dk = random_acyclic(rng, 0, 4, 2);
  const Multicomplex prod = product(minimal, Multicomplex(dk.source(), {dk})).product;
  const GradedSpace& a = prod.space();
  GradedMap g(a, a, 0), g_inv(a, a, 0);
  for (const auto& [k, n] : a.dims()) {
    const Matrix p = rng.invertible(n);
    g.set_block(k, p);
    g_inv.set_block(k, inverse(p));
  }
  const OperatorSeries r = random_series(rng, a);
  const OperatorSeries f = series_mul(OperatorSeries::constant(g), series_exp(r));
  const OperatorSeries f_inv = series_mul(series_exp(-r), OperatorSeries::constant(g_inv));
  const OperatorSeries dz = OperatorSeries::from_coeffs(a, -1, prod.deltas());
  return Multicomplex(a, series_mul(f, series_mul(dz, f_inv)).coeffs());
}

/// Literal sum over compositions (i_1, ..., i_k) of n of
/// D_{i_1} h D_{i_2} h ... h D_{i_k}; independent of the recurrence.
inline GradedMap composition_sum(const Multicomplex& m, const GradedMap& h, std::size_t n) {
  GradedMap total = GradedMap::zero(m.space(), 2 * static_cast<int>(n) - 1);
  // acc = D_{i_1} h ... h D_{i_j} with i_1 + ... + i_j = n - left.
  std::function<void(std::size_t, const GradedMap&)> rec = [&](std::size_t left,
                                                                const GradedMap& acc) {
    if (left == 0) {
      total += acc;
      return;
    }
    for (std::size_t i = 1; i <= left; ++i) rec(left - i, acc * h * m.delta(i));
  };
  for (std::size_t i = 1; i <= n; ++i) rec(n - i, m.delta(i));
  return total;
}

inline std::vector<GeneratedInstance> corpus(std::size_t count, std::uint64_t base = 1000) {
  return generate_corpus(count, base);
}

}  // namespace hodge::testing
