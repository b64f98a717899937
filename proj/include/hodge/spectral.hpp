#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "hodge/multicx.hpp"

namespace hodge {

/// Total complex of a multicomplex with its row filtration.
///
/// In total degree n the slots are indexed by the filtration index s (the
/// row is q = -s) and carry the space A_{n+2s}; the filtration F_s keeps the
/// slots s' >= s. The boundary is the sum of the operators: D_r sends slot s
/// in degree n to slot s + r in degree n - 1. Coordinates of T_n list the
/// slots in increasing s.
///
/// The complex is 2-periodic in n (slots shift by one), so only the window
/// [lo, hi] of total degrees is materialized.
class TotalComplex {
 public:
  TotalComplex() = default;
  /// Throws InvalidMulticomplex if m fails validation, WindowTooSmall if
  /// hi - lo < 2, and InvariantViolation if the boundary does not square to 0.
  explicit TotalComplex(Multicomplex m, int lo = -1, int hi = 4);

  const Multicomplex& source() const noexcept { return m_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }

  /// Filtration indices of the nonzero slots in degree n, increasing.
  std::vector<int> slots(int n) const;
  std::size_t dim(int n) const;
  /// Offset of slot s in T_n (the slot must exist).
  std::size_t offset(int s, int n) const;
  /// Boundary T_n -> T_{n-1}.
  Matrix boundary(int n) const;
  /// F_s in degree n as a coordinate subspace.
  Subspace filtration(int s, int n) const;
  /// Largest page index at which a differential can be nonzero, plus one.
  int stable_page() const;

 private:
  Multicomplex m_;
  int lo_ = -1;
  int hi_ = 4;
};

TotalComplex total_complex(const Multicomplex& m);

using Bidegree = std::pair<int, int>;  // (filtration s, total degree n)

/// E^r in total degrees lo+1 .. hi-1 and d^r : E^r_{s,n} -> E^r_{s+r,n-1}
/// for sources in degrees lo+2 .. hi-1.
struct SpectralPage {
  int r = 0;
  std::map<Bidegree, Subquotient> entries;
  std::map<Bidegree, Matrix> differentials;  // keyed by source

  std::size_t dim(int s, int n) const;
  /// Sum of dim E^r_{s,n} over s.
  std::size_t total_dim(int n) const;
  bool differentials_vanish() const;
};

/// Z^r_s = F_s cap d^{-1} F_{s+r} and
/// E^r_{s,n} = Z^r_s / (Z^{r-1}_{s+1} + d Z^{r-1}_{s-r+1}(n+1)).
SpectralPage page(const TotalComplex& t, int r);

struct Degeneration {
  bool degenerates = true;
  /// Least page with a nonzero differential and one offending source.
  int r = 0;
  Bidegree where{0, 0};
};

/// Checks d^r = 0 for 1 <= r < stable_page().
Degeneration degenerates_at_one(const TotalComplex& t);

/// True iff dims of H(E^r, d^r) equal dims of E^{r+1} wherever both are
/// computed.
bool pages_consistent(const TotalComplex& t, int r);

/// Columns in T_n coordinates lifting a basis of H_{n+2s}: slot s + k
/// receives comps[k] applied to the basis, for k < comps.size().
/// `comps` are the maps H -> A of degree 2k (e.g. i, i_1, ... of a transfer).
Matrix homology_lift(const TotalComplex& t, int s, int n, const std::vector<GradedMap>& comps);

}  // namespace hodge
