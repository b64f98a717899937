#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "hodge/exactla.hpp"

namespace hodge {

/// Finitely supported Z-graded vector space, recorded by its dimensions.
/// Absent degrees have dimension 0.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(const std::map<int, std::size_t>& dims);

  std::size_t dim(int degree) const;
  const std::map<int, std::size_t>& dims() const noexcept { return dims_; }
  std::vector<int> degrees() const;
  bool empty() const noexcept { return dims_.empty(); }
  int min_degree() const;
  int max_degree() const;
  /// max degree - min degree; 0 for the zero space.
  int width() const;
  std::size_t total_dim() const;

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

 private:
  std::map<int, std::size_t> dims_;
};

/// Degreewise direct sum; in each degree the basis of `a` comes first.
GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b);

/// Degree-homogeneous linear map. The block at source degree k has shape
/// target.dim(k + degree) x source.dim(k). Zero blocks are not stored.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedSpace source, GradedSpace target, int degree);

  static GradedMap zero(const GradedSpace& source, const GradedSpace& target, int degree);
  static GradedMap zero(const GradedSpace& space, int degree) { return zero(space, space, degree); }
  static GradedMap identity(const GradedSpace& space);

  const GradedSpace& source() const noexcept { return source_; }
  const GradedSpace& target() const noexcept { return target_; }
  int degree() const noexcept { return degree_; }
  const std::map<int, Matrix>& blocks() const noexcept { return blocks_; }

  /// Block at source degree k, or a zero matrix of the right shape.
  Matrix block(int source_degree) const;
  /// Checks the shape; zero blocks are dropped.
  void set_block(int source_degree, Matrix block);

  bool is_zero() const noexcept { return blocks_.empty(); }
  /// Source degree of the first nonzero block.
  std::optional<int> first_nonzero_degree() const;

  GradedMap& operator+=(const GradedMap& other);
  GradedMap& operator-=(const GradedMap& other);
  GradedMap& operator*=(const Scalar& factor);

  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend GradedMap operator-(GradedMap a) { return a *= Scalar(-1); }
  friend GradedMap operator*(const Scalar& s, GradedMap a) { return a *= s; }
  /// Composition g * f = g o f.
  friend GradedMap operator*(const GradedMap& g, const GradedMap& f);
  friend bool operator==(const GradedMap&, const GradedMap&) = default;

 private:
  void check_compatible(const GradedMap& other, const char* what) const;

  GradedSpace source_;
  GradedSpace target_;
  int degree_ = 0;
  std::map<int, Matrix> blocks_;
};

/// g o f; throws ShapeMismatch when f's target is not g's source.
GradedMap compose(const GradedMap& g, const GradedMap& f);

/// Sum of s_i * f_i. An empty list yields the zero map of the declared
/// degree between the declared spaces. Throws DegreeMismatch / SpaceMismatch.
GradedMap lincomb(const std::vector<std::pair<Scalar, GradedMap>>& terms,
                  const GradedSpace& source, const GradedSpace& target, int degree);

/// Graded commutator a b - (-1)^{|a||b|} b a of endomorphisms.
GradedMap graded_commutator(const GradedMap& a, const GradedMap& b);

/// diag(f, g) on the direct sums of sources and targets.
GradedMap direct_sum(const GradedMap& f, const GradedMap& g);

/// [top; bottom]: source -> top.target (+) bottom.target.
GradedMap stack(const GradedMap& top, const GradedMap& bottom);

/// [left right]: left.source (+) right.source -> target.
GradedMap concat(const GradedMap& left, const GradedMap& right);

/// Homology dimensions of a degree -1 square-zero endomorphism; throws
/// DegreeMismatch or NotSquareZero.
GradedSpace homology(const GradedMap& d);

}  // namespace hodge
