#include "hodge/spectral.hpp"

#include <algorithm>

namespace hodge {

namespace {

int floor_div2(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

TotalComplex::TotalComplex(Multicomplex m, int lo, int hi) : m_(std::move(m)), lo_(lo), hi_(hi) {
  if (hi_ - lo_ < 2) throw WindowTooSmall("total-degree window needs at least three degrees");
  if (auto rep = validate_multicomplex(m_); !rep.ok()) {
    throw InvalidMulticomplex("total_complex: " + rep.summary());
  }
  for (int n = lo_ + 1; n <= hi_; ++n) {
    if (!(boundary(n - 1) * boundary(n)).is_zero()) {
      throw InvariantViolation("total boundary does not square to zero in degree " +
                               std::to_string(n));
    }
  }
}

std::vector<int> TotalComplex::slots(int n) const {
  std::vector<int> out;
  for (int k : m_.space().degrees()) {
    if ((k - n) % 2 == 0) out.push_back(floor_div2(k - n));
  }
  return out;
}

std::size_t TotalComplex::dim(int n) const {
  std::size_t total = 0;
  for (int s : slots(n)) total += m_.space().dim(n + 2 * s);
  return total;
}

std::size_t TotalComplex::offset(int s, int n) const {
  std::size_t off = 0;
  for (int s2 : slots(n)) {
    if (s2 == s) return off;
    off += m_.space().dim(n + 2 * s2);
  }
  throw SpaceMismatch("no slot " + std::to_string(s) + " in total degree " + std::to_string(n));
}

Matrix TotalComplex::boundary(int n) const {
  Matrix out(dim(n - 1), dim(n));
  const auto src = slots(n);
  const auto tgt = slots(n - 1);
  for (int s : src) {
    for (int t : tgt) {
      const int r = t - s;
      if (r < 0 || static_cast<std::size_t>(r) >= m_.deltas().size()) continue;
      out.place(offset(t, n - 1), offset(s, n), m_.delta(r).block(n + 2 * s));
    }
  }
  return out;
}

Subspace TotalComplex::filtration(int s, int n) const {
  std::vector<std::size_t> idx;
  std::size_t off = 0;
  for (int s2 : slots(n)) {
    const std::size_t d = m_.space().dim(n + 2 * s2);
    if (s2 >= s) {
      for (std::size_t j = 0; j < d; ++j) idx.push_back(off + j);
    }
    off += d;
  }
  return Subspace::coordinate(dim(n), idx);
}

int TotalComplex::stable_page() const {
  // d^r shifts the filtration by r, and the slots of one total degree span at
  // most floor(width / 2) filtration steps.
  return static_cast<int>(m_.max_operator_index()) + 1;
}

TotalComplex total_complex(const Multicomplex& m) { return TotalComplex(m); }

std::size_t SpectralPage::dim(int s, int n) const {
  auto it = entries.find({s, n});
  return it == entries.end() ? 0 : it->second.dim();
}

std::size_t SpectralPage::total_dim(int n) const {
  std::size_t total = 0;
  for (const auto& [key, e] : entries) {
    if (key.second == n) total += e.dim();
  }
  return total;
}

bool SpectralPage::differentials_vanish() const {
  return std::all_of(differentials.begin(), differentials.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

Subspace cycles(const TotalComplex& t, int r, int s, int n) {
  const Subspace f = t.filtration(s, n);
  if (r <= 0) return f;
  // Rows of T_{n-1} below filtration s + r come first.
  std::size_t below = 0;
  for (int s2 : t.slots(n - 1)) {
    if (s2 < s + r) below += t.source().space().dim(n - 1 + 2 * s2);
  }
  const Matrix proj = t.boundary(n).row_range(0, below) * f.basis();
  const Subspace ker = kernel_image(proj).kernel;
  return Subspace::from_basis(f.basis() * ker.basis());
}

Subquotient entry(const TotalComplex& t, int r, int s, int n) {
  const Subspace num = cycles(t, r, s, n);
  const Subspace lower = cycles(t, r - 1, s + 1, n);
  const Matrix bdry = t.boundary(n + 1) * cycles(t, r - 1, s - r + 1, n + 1).basis();
  return Subquotient(num, sum(lower, Subspace::span(bdry)));
}

}  // namespace

SpectralPage page(const TotalComplex& t, int r) {
  SpectralPage out;
  out.r = r;
  for (int n = t.lo() + 1; n <= t.hi() - 1; ++n) {
    for (int s : t.slots(n)) out.entries.emplace(Bidegree{s, n}, entry(t, r, s, n));
  }
  for (int n = t.lo() + 2; n <= t.hi() - 1; ++n) {
    const Matrix bdry = t.boundary(n);
    for (int s : t.slots(n)) {
      const Subquotient& src = out.entries.at({s, n});
      auto tgt = out.entries.find({s + r, n - 1});
      Matrix dr = tgt == out.entries.end()
                      ? Matrix(0, src.dim())
                      : induced_subquotient_map(bdry, src, tgt->second);
      out.differentials.emplace(Bidegree{s, n}, std::move(dr));
    }
  }
  return out;
}

Degeneration degenerates_at_one(const TotalComplex& t) {
  Degeneration out;
  for (int r = 1; r < t.stable_page(); ++r) {
    const SpectralPage p = page(t, r);
    for (const auto& [key, dr] : p.differentials) {
      if (!dr.is_zero()) {
        out.degenerates = false;
        out.r = r;
        out.where = key;
        return out;
      }
    }
  }
  return out;
}

bool pages_consistent(const TotalComplex& t, int r) {
  const SpectralPage cur = page(t, r);
  const SpectralPage next = page(t, r + 1);
  for (const auto& [key, e] : next.entries) {
    const auto [s, n] = key;
    auto out_it = cur.differentials.find({s, n});
    auto in_it = cur.differentials.find({s - r, n + 1});
    const bool in_computed = n + 1 <= t.hi() - 1;
    if (out_it == cur.differentials.end() || !in_computed) continue;
    const std::size_t rank_in = in_it == cur.differentials.end() ? 0 : rank(in_it->second);
    const std::size_t h = cur.dim(s, n) - rank(out_it->second) - rank_in;
    if (h != e.dim()) return false;
  }
  return true;
}

Matrix homology_lift(const TotalComplex& t, int s, int n, const std::vector<GradedMap>& comps) {
  if (comps.empty()) throw SpaceMismatch("homology_lift needs at least one component");
  const int k = n + 2 * s;
  const std::size_t cols = comps.front().source().dim(k);
  Matrix out(t.dim(n), cols);
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const int slot = s + static_cast<int>(j);
    if (t.source().space().dim(n + 2 * slot) == 0) continue;
    out.place(t.offset(slot, n), 0, comps[j].block(k));
  }
  return out;
}

}  // namespace hodge
