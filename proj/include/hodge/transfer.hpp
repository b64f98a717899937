#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/multicx.hpp"

namespace hodge {

/// p : A -> H, i : H -> A, h : A -> A of degree +1 with
///   pi = id_H,  ip - id_A = d_A h + h d_A,
/// and the side conditions hi = 0, ph = 0, hh = 0.
struct DeformationRetract {
  GradedSpace big;
  GradedSpace small;
  GradedMap p;
  GradedMap i;
  GradedMap h;
  GradedMap d_big;
  GradedMap d_small;
};

/// Empty when every retract identity and side condition holds; otherwise
/// the name of the first one that fails.
std::optional<std::string> retract_defect(const DeformationRetract& r);

/// A = H (+) K with K = im d (+) C. `k_projection` is q : A -> K and
/// `k_inclusion` the inclusion K -> A; K carries d_K = q d (inclusion).
struct Splitting {
  DeformationRetract retract;
  GradedSpace k_space;
  GradedMap k_inclusion;
  GradedMap k_projection;
  GradedMap k_differential;
};

/// Canonical splitting: Z = ker d, C a complement of Z, B = d(C), H a
/// complement of B in Z, all chosen by the leftmost-pivot rule. h inverts d
/// from C onto B (with the sign forced by ip - id = dh + hd) and vanishes on
/// H (+) C. Throws NotSquareZero / DegreeMismatch.
Splitting build_retract(const GradedMap& d);

/// Same construction after replacing H by H G + B M and C by C G' + [H B] N
/// for random invertible G, G' and random M, N.
Splitting build_retract_randomized(const GradedMap& d, std::uint64_t seed);

struct TransferOutput {
  Multicomplex transferred;
  InfinityMorphism i_inf;
  InfinityMorphism p_inf;
  /// q, q_1, q_2, ... : A -> K; only filled when a Splitting is supplied.
  std::vector<GradedMap> q_comps;
};

/// Homotopy transfer of m along r:
///   D'_n = sum p D_{i1} h D_{i2} h ... h D_{ik} i,
///   i_n  = sum h D_{i1} h ... h D_{ik} i,
///   p_n  = sum p D_{i1} h ... h D_{ik} h,
/// over compositions of n. Throws SpaceMismatch if m does not live on r.big
/// with differential r.d_big.
TransferOutput transfer_structure(const DeformationRetract& r, const Multicomplex& m);
TransferOutput transfer_structure(const Splitting& s, const Multicomplex& m);

struct HodgeCheck {
  bool holds = true;
  /// Least n >= 1 with D'_n != 0, its first nonzero source degree and block.
  std::size_t n = 0;
  int source_degree = 0;
  Matrix block;
};

HodgeCheck check_hodge_data(const DeformationRetract& r, const Multicomplex& m);

struct MinimalModel {
  Multicomplex minimal;  // (H, 0, D'_1, D'_2, ...)
  Multicomplex trivial;  // (K, d_K)
  ProductData product;
  InfinityMorphism r;      // m -> minimal x trivial
  InfinityMorphism r_inv;  // minimal x trivial -> m
  Splitting splitting;
};

/// Decomposition of m into a minimal multicomplex times an acyclic trivial
/// one. Both r and r_inv are validated (InvariantViolation otherwise).
MinimalModel minimal_model(const Multicomplex& m);

}  // namespace hodge
