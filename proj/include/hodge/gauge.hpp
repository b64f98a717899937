#pragma once

#include <cstddef>
#include <vector>

#include "hodge/transfer.hpp"

namespace hodge {

/// Truncated power series sum_n c_n z^n of endomorphisms of a graded space,
/// where c_n has degree 2n + offset: offset 0 for isotopy-type series,
/// -1 for differential-type series d + D_1 z + ... . Coefficients past
/// max_power() are zero for degree reasons, so truncation is exact.
class OperatorSeries {
 public:
  OperatorSeries() = default;
  /// The zero series.
  OperatorSeries(GradedSpace space, int offset);

  /// id at z^0.
  static OperatorSeries unit(const GradedSpace& space);
  /// f at z^0, offset = f.degree().
  static OperatorSeries constant(const GradedMap& f);
  /// Coefficients c_0, c_1, ...; degrees and spaces are checked.
  static OperatorSeries from_coeffs(const GradedSpace& space, int offset,
                                    const std::vector<GradedMap>& coeffs);

  const GradedSpace& space() const noexcept { return space_; }
  int offset() const noexcept { return offset_; }
  /// Largest n with 2n + offset <= width.
  std::size_t max_power() const noexcept { return coeffs_.size() - 1; }
  const std::vector<GradedMap>& coeffs() const noexcept { return coeffs_; }

  /// c_n, or the zero map of the right degree.
  GradedMap coeff(std::size_t n) const;
  /// Throws DegreeMismatch / SpaceMismatch; powers past max_power() accept
  /// only zero maps.
  void set_coeff(std::size_t n, const GradedMap& c);

  bool is_zero() const;
  bool zero_constant_term() const { return coeffs_.front().is_zero(); }

  OperatorSeries& operator+=(const OperatorSeries& other);
  OperatorSeries& operator-=(const OperatorSeries& other);
  OperatorSeries& operator*=(const Scalar& s);

  friend OperatorSeries operator+(OperatorSeries a, const OperatorSeries& b) { return a += b; }
  friend OperatorSeries operator-(OperatorSeries a, const OperatorSeries& b) { return a -= b; }
  friend OperatorSeries operator-(OperatorSeries a) { return a *= Scalar(-1); }
  friend OperatorSeries operator*(const Scalar& s, OperatorSeries a) { return a *= s; }
  friend bool operator==(const OperatorSeries&, const OperatorSeries&) = default;

 private:
  void check_compatible(const OperatorSeries& other) const;

  GradedSpace space_;
  int offset_ = 0;
  std::vector<GradedMap> coeffs_;
};

/// Cauchy product; throws SpaceMismatch.
OperatorSeries series_mul(const OperatorSeries& a, const OperatorSeries& b);
/// Throws BadConstantTerm unless r has zero constant term.
OperatorSeries series_exp(const OperatorSeries& r);
/// Throws BadConstantTerm unless u has constant term id.
OperatorSeries series_log(const OperatorSeries& u);

/// e^{R} d e^{-R}, computed as sum_k ad_R^k(d)/k! and checked against the
/// product of exponentials (InvariantViolation on disagreement).
OperatorSeries conjugate_differential(const OperatorSeries& r, const GradedMap& d);

/// sum f_n z^n for an infinity-morphism between multicomplexes on one space.
OperatorSeries series_from_isotopy(const InfinityMorphism& f);
/// Inverse dictionary; the components are validated only for degrees.
InfinityMorphism isotopy_from_series(const OperatorSeries& s, const Multicomplex& source,
                                     const Multicomplex& target);

struct GaugeCheck {
  bool holds = true;
  std::size_t n = 0;  // first power at which the coefficients differ
};

/// Does e^{R} D_0 e^{-R} = D_0 + D_1 z + D_2 z^2 + ... hold?
GaugeCheck check_gauge_hodge(const OperatorSeries& r, const Multicomplex& m);

/// The multicomplex whose operators are the coefficients of e^{R} d e^{-R}.
Multicomplex gauge_construct(const GradedMap& d, const OperatorSeries& r);

/// Explicit gauge for a mixed complex (d, delta) with Hodge data r:
///   r_n = (h delta)^n / n - sum_{l=1}^{n} (h delta)^{l-1} i p (delta h)^{n-l+1} / l.
/// Throws HodgeDataFails when the transferred operators do not vanish.
OperatorSeries mixed_R_from_hodge(const DeformationRetract& r, const GradedMap& delta);

struct GaugeSearch {
  bool found = false;
  OperatorSeries r;
  /// When not found: least n with a nonzero transferred operator.
  std::size_t obstruction = 0;
};

/// R = log(r^{-1} o (p + q)) via the minimal model when the canonical
/// retract is Hodge data; otherwise no gauge exists.
GaugeSearch general_R_from_hodge(const Multicomplex& m);

}  // namespace hodge
