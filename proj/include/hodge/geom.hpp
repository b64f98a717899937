#pragma once

// Polynomial differential forms and polyvector fields on R^m.
//
// Forms live in the finite model W_{<=D}: the span of x^alpha dx_I with
// weight |alpha| + |I| <= D. d preserves weight and a contraction i(f d_J)
// shifts it by deg f - |J|, so every operator used here is an honest
// endomorphism of the model and operator identities hold verbatim.
// Form degree k is exported as homological degree -k. Indices are 0-based.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/gauge.hpp"

namespace hodge {

struct Mono {
  std::vector<int> alpha;  // exponents, length m
  std::vector<int> idx;    // strictly increasing

  int weight() const;
  auto operator<=>(const Mono&) const = default;
};

/// Sparse sum of c * x^alpha * e_I with no zero coefficients. e_I is
/// dx_I for forms and d_I = d_{i1} ^ ... ^ d_{ik} for polyvectors.
template <class Tag>
class PolySum {
 public:
  PolySum() = default;
  explicit PolySum(int m) : m_(m) {}

  static PolySum term(int m, std::vector<int> alpha, std::vector<int> idx,
                      const Scalar& c = Scalar(1)) {
    PolySum p(m);
    p.add({std::move(alpha), std::move(idx)}, c);
    return p;
  }

  int dim() const noexcept { return m_; }
  const std::map<Mono, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Mono& key, const Scalar& c) {
    if (hodge::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (hodge::is_zero(it->second)) terms_.erase(it);
    }
  }

  PolySum& operator+=(const PolySum& o) {
    if (m_ == 0) m_ = o.m_;
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  PolySum& operator-=(const PolySum& o) {
    if (m_ == 0) m_ = o.m_;
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  PolySum& operator*=(const Scalar& s) {
    if (hodge::is_zero(s)) terms_.clear();
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend PolySum operator+(PolySum a, const PolySum& b) { return a += b; }
  friend PolySum operator-(PolySum a, const PolySum& b) { return a -= b; }
  friend PolySum operator*(const Scalar& s, PolySum a) { return a *= s; }
  friend bool operator==(const PolySum& a, const PolySum& b) { return a.terms_ == b.terms_; }

 private:
  int m_ = 0;
  std::map<Mono, Scalar> terms_;
};

struct FormTag {};
struct VectorTag {};
using PolyForm = PolySum<FormTag>;
using PolyVector = PolySum<VectorTag>;

/// |J| when all terms share it; nullopt for mixed or zero polyvectors.
std::optional<int> polyvector_degree(const PolyVector& p);
/// Largest |alpha| among the terms (0 for zero).
int coefficient_degree(const PolyVector& p);

enum class ContractionOrder {
  /// i(d_{j1} ^ ... ^ d_{jk}) = i(d_{jk}) o ... o i(d_{j1}): i(d_{j1}) acts first.
  Frozen,
  /// i(d_{j1}) o ... o i(d_{jk}); fails the contraction identity, kept as a
  /// negative control.
  Forward,
};

PolyForm d_de_rham(const PolyForm& a);
/// i(d_j)(dx_I) = (-1)^t dx_{I without j} when j sits at position t of I.
PolyForm contract(const PolyVector& p, const PolyForm& a,
                  ContractionOrder order = ContractionOrder::Frozen);
PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyVector wedge(const PolyVector& p, const PolyVector& q);
/// Schouten-Nijenhuis bracket; agrees with the Lie bracket on vector fields.
PolyVector schouten(const PolyVector& p, const PolyVector& q);

/// i([P,Q]) = -[[i(Q), d], i(P)] on every basis form of weight <= D,
/// evaluated symbolically on the full polynomial algebra.
bool check_contraction_identity(const PolyVector& p, const PolyVector& q, int max_weight,
                                ContractionOrder order = ContractionOrder::Frozen);

/// Human-readable, 1-based: "x2 d1^d2 + d2^d3".
std::string to_string(const PolyVector& p);

bool verify_poisson(const PolyVector& w);
/// [w,w] = 2 E ^ w and [E,w] = 0.
bool verify_jacobi(const PolyVector& w, const PolyVector& e);

/// The model W_{<=D} on R^m with its monomial basis: per form degree k,
/// index sets in lexicographic order, then exponents in lexicographic order.
class FormAlgebra {
 public:
  FormAlgebra(int m, int max_weight);

  int dim() const noexcept { return m_; }
  int max_weight() const noexcept { return d_; }
  /// Form degree k sits in homological degree -k.
  const GradedSpace& space() const noexcept { return space_; }
  const std::vector<Mono>& basis(int form_degree) const;
  std::size_t index(const Mono& key) const;

  /// Coordinates of the degree-k part of a form; throws WindowTooSmall for
  /// terms outside the model.
  Matrix column(const PolyForm& a, int form_degree) const;
  PolyForm form(const Matrix& column, int form_degree) const;
  /// Apply an operator on the exported space to a form.
  PolyForm apply(const GradedMap& op, const PolyForm& a) const;

  /// Matrix of an operator of form degree shift `shift` given on forms.
  GradedMap matrix(int shift, const std::function<PolyForm(const PolyForm&)>& op) const;

 private:
  int m_;
  int d_;
  GradedSpace space_;
  std::map<int, std::vector<Mono>> basis_;
  std::map<Mono, std::size_t> index_;
};

GradedMap d_de_rham(const FormAlgebra& a);
GradedMap contraction(const PolyVector& p, const FormAlgebra& a,
                      ContractionOrder order = ContractionOrder::Frozen);
/// Left wedge multiplication by a form (truncated to the model).
GradedMap left_multiplication(const PolyForm& b, const FormAlgebra& a);
/// Delta = [i(w), d] = i(w) d - d i(w).
GradedMap koszul_delta(const PolyVector& w, const FormAlgebra& a);

struct GeometricComplex {
  Multicomplex complex;
  OperatorSeries gauge;  // i(w) z
};

/// (W, d, Delta) with gauge i(w) z. Throws NotPoisson.
GeometricComplex poisson_mixed_complex(const PolyVector& w, const FormAlgebra& a);

/// (W, d, Delta, i(E) i(w)) with gauge i(w) z. Throws NotJacobi.
GeometricComplex jacobi_multicomplex(const PolyVector& w, const PolyVector& e,
                                     const FormAlgebra& a);

struct BasicComplex {
  Multicomplex complex;  // (Omega_B, d, Delta)
  GradedMap inclusion;   // Omega_B -> W
};

/// Basic forms ker i(E) cap ker i(E) d with the restricted d and Delta.
/// Throws NotJacobi.
BasicComplex basic_subcomplex(const PolyVector& w, const PolyVector& e, const FormAlgebra& a);

/// Whether op has differential-operator order <= k: every (k+1)-fold graded
/// commutator with left multiplications by x_j and dx_j vanishes. Evaluated
/// on weights <= D - k - 1 - u where u is the largest weight increase of op;
/// exact when order(op) + u <= D. Throws WindowTooSmall when that range is
/// empty.
bool operator_order(const GradedMap& op, const FormAlgebra& a, int k);

/// Packages operators on the model as a multicomplex (no validation).
Multicomplex export_multicomplex(const FormAlgebra& a, std::vector<GradedMap> deltas);

}  // namespace hodge
