#include "hodge/generate.hpp"

#include <stdexcept>

#include "hodge/geom.hpp"

namespace hodge {

namespace {

// Invertible change of basis per degree.
std::map<int, Matrix> random_bases(Rng& rng, const GradedSpace& space) {
  std::map<int, Matrix> out;
  for (const auto& [k, n] : space.dims()) out[k] = rng.invertible(n);
  return out;
}

// p d p^{-1} for a degreewise automorphism p.
GradedMap conjugate(const GradedMap& d, const std::map<int, Matrix>& p) {
  GradedMap out(d.source(), d.target(), d.degree());
  for (const auto& [k, block] : d.blocks()) {
    out.set_block(k, p.at(k + d.degree()) * block * inverse(p.at(k)));
  }
  return out;
}

GradedMap strict_map(const GradedSpace& space, const std::map<int, Matrix>& p) {
  GradedMap out(space, space, 0);
  for (const auto& [k, b] : p) out.set_block(k, b);
  return out;
}

// F D(z) F^{-1} for an invertible isotopy-type series F.
Multicomplex transform(const Multicomplex& m, const OperatorSeries& f, const OperatorSeries& f_inv) {
  const OperatorSeries dz = OperatorSeries::from_coeffs(m.space(), -1, m.deltas());
  std::vector<GradedMap> deltas = series_mul(f, series_mul(dz, f_inv)).coeffs();
  while (deltas.size() > 1 && deltas.back().is_zero()) deltas.pop_back();
  Multicomplex out(m.space(), std::move(deltas));
  if (auto rep = validate_multicomplex(out); !rep.ok()) {
    throw InvariantViolation("generator produced an invalid multicomplex: " + rep.summary());
  }
  return out;
}

GradedMap single_entry_map(const GradedSpace& s, int degree, int src, std::size_t row,
                           std::size_t col) {
  GradedMap out(s, s, degree);
  Matrix b(s.dim(src + degree), s.dim(src));
  b.set(row, col, Scalar(1));
  out.set_block(src, b);
  return out;
}

}  // namespace

GradedSpace random_space(Rng& rng, int max_width, int max_dim) {
  const int lo = rng.uniform(-2, 0);
  const int w = rng.uniform(1, max_width);
  std::map<int, std::size_t> dims;
  for (int k = lo; k <= lo + w; ++k) {
    const bool end = k == lo || k == lo + w;
    dims[k] = static_cast<std::size_t>(rng.uniform(end ? 1 : 0, max_dim));
  }
  return GradedSpace(dims);
}

GradedMap random_differential(Rng& rng, const GradedSpace& space, int degree) {
  if (degree != 1 && degree != -1) throw DegreeMismatch("random_differential needs degree +-1");
  std::vector<int> order = space.degrees();
  if (degree == 1) std::reverse(order.begin(), order.end());
  // rank[k] = rank of the block with source degree k.
  std::map<int, std::size_t> rank;
  GradedMap e(space, space, degree);
  for (int k : order) {
    const std::size_t tgt_dim = space.dim(k + degree);
    const std::size_t used = rank.count(k + degree) ? rank[k + degree] : 0;
    const std::size_t lim = std::min(space.dim(k), tgt_dim - std::min(tgt_dim, used));
    rank[k] = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(lim)));
    if (rank[k] == 0) continue;
    // Last rank coordinates of the source onto the first ones of the target.
    Matrix b(tgt_dim, space.dim(k));
    for (std::size_t j = 0; j < rank[k]; ++j) b.set(j, space.dim(k) - 1 - j, Scalar(1));
    e.set_block(k, b);
  }
  return conjugate(e, random_bases(rng, space));
}

GradedMap random_acyclic(Rng& rng, int lo, int hi, int max_dim) {
  // c[k] = dim of a complement C_k mapped isomorphically onto B_{k-1}.
  std::map<int, std::size_t> c;
  c[lo] = 0;
  c[hi + 1] = 0;
  for (int k = lo + 1; k <= hi; ++k) {
    const int room = max_dim - static_cast<int>(c[k - 1]);
    c[k] = static_cast<std::size_t>(rng.uniform(0, std::max(0, std::min(room, max_dim / 2 + 1))));
  }
  std::map<int, std::size_t> dims;
  for (int k = lo; k <= hi; ++k) dims[k] = c[k + 1] + c[k];
  const GradedSpace space(dims);
  GradedMap e(space, space, -1);
  for (int k = lo + 1; k <= hi; ++k) {
    if (c[k] == 0) continue;
    Matrix b(dims[k - 1], dims[k]);
    for (std::size_t j = 0; j < c[k]; ++j) b.set(j, c[k + 1] + j, Scalar(1));
    e.set_block(k, b);
  }
  return conjugate(e, random_bases(rng, space));
}

OperatorSeries random_series(Rng& rng, const GradedSpace& space) {
  OperatorSeries r(space, 0);
  for (std::size_t n = 1; n <= r.max_power(); ++n) {
    if (!rng.chance(3, 4)) continue;
    GradedMap c(space, space, 2 * static_cast<int>(n));
    for (const auto& [k, dim] : space.dims()) {
      const std::size_t rows = space.dim(k + 2 * static_cast<int>(n));
      if (rows == 0) continue;
      c.set_block(k, rng.sparse_matrix(rows, dim, -2, 2, 1, 2));
    }
    r.set_coeff(n, c);
  }
  return r;
}

GeneratedInstance generate_gauge_orbit(std::uint64_t seed) {
  Rng rng(seed);
  const GradedSpace space = random_space(rng, 6, 4);
  // A zero d makes the whole orbit zero; redraw a few times.
  GradedMap d = random_differential(rng, space, -1);
  for (int tries = 0; tries < 4 && d.is_zero(); ++tries) d = random_differential(rng, space, -1);
  OperatorSeries r = random_series(rng, space);
  GeneratedInstance out{gauge_construct(d, r), "a", seed, "gauge-orbit", r, true};
  return out;
}

GeneratedInstance generate_obstructed(std::uint64_t seed) {
  Rng rng(seed);
  const int lo = rng.uniform(-2, 0);
  const int hi = lo + rng.uniform(2, 6);
  // Minimal part: two adjacent nonzero degrees guarantee room for D_1 != 0.
  const int base = rng.uniform(lo, hi - 1);
  std::map<int, std::size_t> hdims;
  for (int k = lo; k <= hi; ++k) hdims[k] = static_cast<std::size_t>(rng.uniform(0, 2));
  hdims[base] = std::max<std::size_t>(hdims[base], 1);
  hdims[base + 1] = std::max<std::size_t>(hdims[base + 1], 1);
  const GradedSpace h(hdims);
  GradedMap delta1 = random_differential(rng, h, 1);
  if (delta1.is_zero()) delta1 = single_entry_map(h, 1, base, 0, 0);
  const Multicomplex minimal(h, {GradedMap::zero(h, -1), delta1});

  const GradedMap dk = random_acyclic(rng, lo, hi, 2);
  const Multicomplex trivial(dk.source(), {dk});
  const Multicomplex prod = product(minimal, trivial).product;

  const OperatorSeries r = random_series(rng, prod.space());
  const auto g = random_bases(rng, prod.space());
  std::map<int, Matrix> g_inv;
  for (const auto& [k, b] : g) g_inv[k] = inverse(b);
  const OperatorSeries f =
      series_mul(OperatorSeries::constant(strict_map(prod.space(), g)), series_exp(r));
  const OperatorSeries f_inv =
      series_mul(series_exp(-r), OperatorSeries::constant(strict_map(prod.space(), g_inv)));
  return {transform(prod, f, f_inv), "b", seed, "minimal-times-acyclic", std::nullopt, false};
}

std::size_t library_size() { return 7; }

GeneratedInstance generate_library(std::uint64_t seed) {
  const std::size_t which = seed % library_size();
  GeneratedInstance out;
  out.profile = "c";
  out.seed = seed;
  switch (which) {
    case 0: {
      out.m = Multicomplex::zero(GradedSpace(std::map<int, std::size_t>{{0, 1}}));
      out.label = "zero";
      break;
    }
    case 1: {
      const GradedSpace s({{0, 1}, {1, 1}});
      out.m = Multicomplex::mixed(GradedMap::zero(s, -1), single_entry_map(s, 1, 0, 0, 0));
      out.label = "zero-d-nonzero-delta";
      out.expect_degenerate = false;
      break;
    }
    case 2: {
      const GradedSpace s({{0, 1}, {1, 1}});
      out.m = Multicomplex::mixed(single_entry_map(s, -1, 1, 0, 0), GradedMap::zero(s, 1));
      out.label = "acyclic-pair";
      break;
    }
    case 3: {
      const GradedSpace s({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
      const GradedMap d = single_entry_map(s, -1, 1, 0, 0) + single_entry_map(s, -1, 3, 0, 0);
      OperatorSeries r(s, 0);
      r.set_coeff(1, single_entry_map(s, 2, 0, 0, 0));
      out.m = gauge_construct(d, r);
      out.gauge = r;
      out.label = "linear-gauge";
      break;
    }
    case 4: {
      const GradedSpace s({{0, 1}, {1, 2}, {2, 1}});
      // H = A_0 (+) first line of A_1 with D_1 between them; acyclic A_1' -> ... A_2 -> A_1'.
      const GradedMap d = single_entry_map(s, -1, 2, 1, 0);
      const GradedMap delta = single_entry_map(s, 1, 0, 0, 0);
      out.m = Multicomplex::mixed(d, delta);
      out.label = "minimal-plus-acyclic";
      out.expect_degenerate = false;
      break;
    }
    case 5: {
      const FormAlgebra a(2, 1);
      const PolyVector w = PolyVector::term(2, {0, 0}, {0, 1});
      out.m = poisson_mixed_complex(w, a).complex;
      out.label = "symplectic-plane";
      break;
    }
    default: {
      const GradedSpace s({{0, 1}, {1, 2}, {2, 1}});
      const GradedMap delta = single_entry_map(s, 1, 0, 0, 0) + single_entry_map(s, 1, 1, 0, 1);
      out.m = Multicomplex::mixed(GradedMap::zero(s, -1), delta);
      out.label = "zigzag-obstructed";
      out.expect_degenerate = false;
      break;
    }
  }
  if (auto rep = validate_multicomplex(out.m); !rep.ok()) {
    throw InvariantViolation("library entry " + out.label + " is invalid: " + rep.summary());
  }
  return out;
}

GeneratedInstance generate(const std::string& profile, std::uint64_t seed) {
  if (profile == "a") return generate_gauge_orbit(seed);
  if (profile == "b") return generate_obstructed(seed);
  if (profile == "c") return generate_library(seed);
  throw std::invalid_argument("unknown profile '" + profile + "' (expected a, b or c)");
}

std::vector<GeneratedInstance> generate_corpus(std::size_t count, std::uint64_t base_seed) {
  static const char* const pattern[] = {"a", "b", "a", "c"};
  std::vector<GeneratedInstance> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(generate(pattern[j % 4], base_seed + j));
  return out;
}

}  // namespace hodge
