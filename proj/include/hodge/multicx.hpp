#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hodge/graded.hpp"

namespace hodge {

/// A graded space with operators D_0 = d, D_1, D_2, ... where D_n has degree
/// 2n - 1. Operators past the stored list are zero.
class Multicomplex {
 public:
  Multicomplex() = default;
  /// Checks that every operator is an endomorphism of `space` of degree
  /// 2n - 1 (DegreeMismatch / SpaceMismatch). Does not check the relations;
  /// see validate_multicomplex.
  Multicomplex(GradedSpace space, std::vector<GradedMap> deltas);

  /// Mixed complex (d, delta).
  static Multicomplex mixed(const GradedMap& d, const GradedMap& delta);
  /// (space, 0, 0, ...).
  static Multicomplex zero(const GradedSpace& space);

  const GradedSpace& space() const noexcept { return space_; }
  const std::vector<GradedMap>& deltas() const noexcept { return deltas_; }
  /// D_n, or the zero map of degree 2n - 1 past the stored list.
  GradedMap delta(std::size_t n) const;
  GradedMap d() const { return delta(0); }
  /// Index of the last nonzero operator + 1.
  std::size_t length() const;
  /// Largest n for which D_n can be nonzero: floor((width + 1) / 2).
  std::size_t max_operator_index() const;
  bool is_mixed() const { return length() <= 2; }

  /// Structural equality with zero padding.
  friend bool operator==(const Multicomplex& a, const Multicomplex& b);

 private:
  GradedSpace space_;
  std::vector<GradedMap> deltas_;
};

/// Family f_0, f_1, ... with f_n of degree 2n from source to target.
class InfinityMorphism {
 public:
  InfinityMorphism() = default;
  InfinityMorphism(Multicomplex source, Multicomplex target, std::vector<GradedMap> comps);

  static InfinityMorphism identity(const Multicomplex& m);
  /// f_0 = f, f_n = 0 for n >= 1.
  static InfinityMorphism strict(const Multicomplex& source, const Multicomplex& target,
                                 const GradedMap& f);

  const Multicomplex& source() const noexcept { return source_; }
  const Multicomplex& target() const noexcept { return target_; }
  const std::vector<GradedMap>& comps() const noexcept { return comps_; }
  GradedMap comp(std::size_t n) const;
  std::size_t length() const;

  friend bool operator==(const InfinityMorphism& a, const InfinityMorphism& b);

 private:
  Multicomplex source_;
  Multicomplex target_;
  std::vector<GradedMap> comps_;
};

struct RelationViolation {
  std::size_t n;
  int source_degree;
  Matrix block;
};

/// Empty iff every relation holds.
struct ValidationReport {
  std::vector<RelationViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has_index(std::size_t n) const;
  std::string summary() const;
};

/// Checks sum_{i=0}^n D_i D_{n-i} = 0 for every n at which a product of
/// stored operators can be nonzero.
ValidationReport validate_multicomplex(const Multicomplex& m);

/// Checks sum_{k+l=n} f_k D_l = sum_{k+l=n} D'_k f_l for every relevant n.
ValidationReport validate_infinity_morphism(const InfinityMorphism& f);

/// (gf)_n = sum_{k+l=n} g_k f_l. Throws SourceTargetMismatch.
InfinityMorphism compose_infinity(const InfinityMorphism& g, const InfinityMorphism& f);

/// Inverse of an infinity-isomorphism by g_0 = f_0^{-1},
/// g_n = -f_0^{-1} sum_{k=1..n} f_k g_{n-k}. Throws NotInvertible.
InfinityMorphism invert_infinity(const InfinityMorphism& f);

struct ProductData {
  Multicomplex product;
  InfinityMorphism inj1, inj2, proj1, proj2;
};

ProductData product(const Multicomplex& m1, const Multicomplex& m2);

}  // namespace hodge
