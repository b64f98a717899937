#include "hodge/multicx.hpp"

#include <algorithm>
#include <sstream>

namespace hodge {

namespace {

int delta_degree(std::size_t n) { return 2 * static_cast<int>(n) - 1; }
int morphism_degree(std::size_t n) { return 2 * static_cast<int>(n); }

std::size_t trimmed_length(const std::vector<GradedMap>& maps) {
  std::size_t n = maps.size();
  while (n > 0 && maps[n - 1].is_zero()) --n;
  return n;
}

void record(ValidationReport& report, std::size_t n, const GradedMap& residual) {
  if (auto k = residual.first_nonzero_degree()) {
    report.violations.push_back({n, *k, residual.block(*k)});
  }
}

// Largest n with a possibly nonzero degree-2n map from `from` to `to`.
std::size_t max_morphism_index(const GradedSpace& from, const GradedSpace& to) {
  if (from.empty() || to.empty()) return 0;
  const int span = to.max_degree() - from.min_degree();
  return span < 0 ? 0 : static_cast<std::size_t>(span / 2);
}

}  // namespace

// ---------------------------------------------------------------------------

Multicomplex::Multicomplex(GradedSpace space, std::vector<GradedMap> deltas)
    : space_(std::move(space)), deltas_(std::move(deltas)) {
  for (std::size_t n = 0; n < deltas_.size(); ++n) {
    const auto& op = deltas_[n];
    if (op.degree() != delta_degree(n)) {
      throw DegreeMismatch("operator " + std::to_string(n) + " has degree " +
                           std::to_string(op.degree()) + ", expected " +
                           std::to_string(delta_degree(n)));
    }
    if (op.source() != space_ || op.target() != space_) {
      throw SpaceMismatch("operator " + std::to_string(n) + " is not an endomorphism of the space");
    }
  }
}

Multicomplex Multicomplex::mixed(const GradedMap& d, const GradedMap& delta) {
  return Multicomplex(d.source(), {d, delta});
}

Multicomplex Multicomplex::zero(const GradedSpace& space) {
  return Multicomplex(space, {GradedMap::zero(space, -1)});
}

GradedMap Multicomplex::delta(std::size_t n) const {
  if (n < deltas_.size()) return deltas_[n];
  return GradedMap::zero(space_, delta_degree(n));
}

std::size_t Multicomplex::length() const { return trimmed_length(deltas_); }

std::size_t Multicomplex::max_operator_index() const {
  return static_cast<std::size_t>((space_.width() + 1) / 2);
}

bool operator==(const Multicomplex& a, const Multicomplex& b) {
  if (a.space_ != b.space_) return false;
  const std::size_t n = std::max(a.deltas_.size(), b.deltas_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.delta(i) != b.delta(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

InfinityMorphism::InfinityMorphism(Multicomplex source, Multicomplex target,
                                   std::vector<GradedMap> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
  for (std::size_t n = 0; n < comps_.size(); ++n) {
    const auto& f = comps_[n];
    if (f.degree() != morphism_degree(n)) {
      throw DegreeMismatch("component " + std::to_string(n) + " has degree " +
                           std::to_string(f.degree()) + ", expected " +
                           std::to_string(morphism_degree(n)));
    }
    if (f.source() != source_.space() || f.target() != target_.space()) {
      throw SpaceMismatch("component " + std::to_string(n) + " has the wrong source or target");
    }
  }
}

InfinityMorphism InfinityMorphism::identity(const Multicomplex& m) {
  return InfinityMorphism(m, m, {GradedMap::identity(m.space())});
}

InfinityMorphism InfinityMorphism::strict(const Multicomplex& source, const Multicomplex& target,
                                          const GradedMap& f) {
  return InfinityMorphism(source, target, {f});
}

GradedMap InfinityMorphism::comp(std::size_t n) const {
  if (n < comps_.size()) return comps_[n];
  return GradedMap::zero(source_.space(), target_.space(), morphism_degree(n));
}

std::size_t InfinityMorphism::length() const { return trimmed_length(comps_); }

bool operator==(const InfinityMorphism& a, const InfinityMorphism& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  const std::size_t n = std::max(a.comps_.size(), b.comps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.comp(i) != b.comp(i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

bool ValidationReport::has_index(std::size_t n) const {
  return std::any_of(violations.begin(), violations.end(),
                     [n](const RelationViolation& v) { return v.n == n; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "all relations hold";
  std::ostringstream os;
  os << violations.size() << " violated relation(s):";
  for (const auto& v : violations) os << " n=" << v.n << "@deg" << v.source_degree;
  return os.str();
}

ValidationReport validate_multicomplex(const Multicomplex& m) {
  ValidationReport report;
  const std::size_t len = m.length();
  if (len == 0) return report;
  for (std::size_t n = 0; n + 1 < 2 * len; ++n) {
    GradedMap residual = GradedMap::zero(m.space(), morphism_degree(n) - 2);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i >= len || n - i >= len) continue;
      residual += m.delta(i) * m.delta(n - i);
    }
    record(report, n, residual);
  }
  return report;
}

ValidationReport validate_infinity_morphism(const InfinityMorphism& f) {
  ValidationReport report;
  const std::size_t lf = f.length();
  const std::size_t ls = f.source().length();
  const std::size_t lt = f.target().length();
  if (lf == 0) return report;
  const std::size_t last = lf - 1 + std::max<std::size_t>(std::max(ls, lt), 1) - 1;
  for (std::size_t n = 0; n <= last; ++n) {
    GradedMap residual = GradedMap::zero(f.source().space(), f.target().space(),
                                         morphism_degree(n) - 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const std::size_t l = n - k;
      if (k < lf && l < ls) residual += f.comp(k) * f.source().delta(l);
      if (k < lt && l < lf) residual -= f.target().delta(k) * f.comp(l);
    }
    record(report, n, residual);
  }
  return report;
}

InfinityMorphism compose_infinity(const InfinityMorphism& g, const InfinityMorphism& f) {
  if (!(f.target() == g.source())) {
    throw SourceTargetMismatch("compose_infinity: target(f) != source(g)");
  }
  const std::size_t lf = f.length();
  const std::size_t lg = g.length();
  std::vector<GradedMap> comps;
  if (lf > 0 && lg > 0) {
    for (std::size_t n = 0; n + 1 < lf + lg; ++n) {
      GradedMap c = GradedMap::zero(f.source().space(), g.target().space(), morphism_degree(n));
      for (std::size_t k = 0; k <= n; ++k) {
        if (k < lg && n - k < lf) c += g.comp(k) * f.comp(n - k);
      }
      comps.push_back(std::move(c));
    }
  }
  while (!comps.empty() && comps.back().is_zero()) comps.pop_back();
  return InfinityMorphism(f.source(), g.target(), std::move(comps));
}

InfinityMorphism invert_infinity(const InfinityMorphism& f) {
  const GradedSpace& src = f.source().space();
  const GradedSpace& tgt = f.target().space();
  if (src != tgt) throw NotInvertible("source and target have different dimensions");
  // g_0 = f_0^{-1}, degreewise.
  const GradedMap f0 = f.comp(0);
  GradedMap g0(tgt, src, 0);
  for (int k : tgt.degrees()) {
    try {
      g0.set_block(k, inverse(f0.block(k)));
    } catch (const NotInvertible&) {
      throw NotInvertible("f_0 is singular in degree " + std::to_string(k));
    }
  }
  std::vector<GradedMap> g{g0};
  const std::size_t last = max_morphism_index(tgt, src);
  for (std::size_t n = 1; n <= last; ++n) {
    GradedMap acc = GradedMap::zero(tgt, tgt, morphism_degree(n));
    for (std::size_t k = 1; k <= n; ++k) acc += f.comp(k) * g[n - k];
    g.push_back(-(g0 * acc));
  }
  while (g.size() > 1 && g.back().is_zero()) g.pop_back();
  return InfinityMorphism(f.target(), f.source(), std::move(g));
}

ProductData product(const Multicomplex& m1, const Multicomplex& m2) {
  const std::size_t n = std::max(m1.deltas().size(), m2.deltas().size());
  std::vector<GradedMap> deltas;
  for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
    deltas.push_back(direct_sum(m1.delta(i), m2.delta(i)));
  }
  Multicomplex prod(direct_sum(m1.space(), m2.space()), std::move(deltas));

  const GradedSpace& s1 = m1.space();
  const GradedSpace& s2 = m2.space();
  const GradedSpace& s = prod.space();
  GradedMap i1(s1, s, 0), i2(s2, s, 0), p1(s, s1, 0), p2(s, s2, 0);
  for (const auto& [k, dim] : s.dims()) {
    const std::size_t a = s1.dim(k);
    const std::size_t b = s2.dim(k);
    Matrix e1(dim, a), e2(dim, b);
    for (std::size_t j = 0; j < a; ++j) e1.set(j, j, Scalar(1));
    for (std::size_t j = 0; j < b; ++j) e2.set(a + j, j, Scalar(1));
    if (a > 0) {
      i1.set_block(k, e1);
      p1.set_block(k, e1.transpose());
    }
    if (b > 0) {
      i2.set_block(k, e2);
      p2.set_block(k, e2.transpose());
    }
  }
  return {prod,
          InfinityMorphism::strict(m1, prod, i1),
          InfinityMorphism::strict(m2, prod, i2),
          InfinityMorphism::strict(prod, m1, p1),
          InfinityMorphism::strict(prod, m2, p2)};
}

}  // namespace hodge
