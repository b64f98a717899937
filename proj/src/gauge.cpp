#include "hodge/gauge.hpp"

#include <algorithm>

namespace hodge {

namespace {

std::size_t power_bound(const GradedSpace& space, int offset) {
  const int top = space.width() - offset;
  return top < 0 ? 0 : static_cast<std::size_t>(top / 2);
}

int coeff_degree(std::size_t n, int offset) { return 2 * static_cast<int>(n) + offset; }

}  // namespace

OperatorSeries::OperatorSeries(GradedSpace space, int offset)
    : space_(std::move(space)), offset_(offset) {
  const std::size_t top = power_bound(space_, offset_);
  for (std::size_t n = 0; n <= top; ++n) coeffs_.push_back(GradedMap::zero(space_, coeff_degree(n, offset_)));
}

OperatorSeries OperatorSeries::unit(const GradedSpace& space) {
  OperatorSeries s(space, 0);
  s.coeffs_[0] = GradedMap::identity(space);
  return s;
}

OperatorSeries OperatorSeries::constant(const GradedMap& f) {
  if (f.source() != f.target()) throw SpaceMismatch("series coefficients must be endomorphisms");
  OperatorSeries s(f.source(), f.degree());
  s.coeffs_[0] = f;
  return s;
}

OperatorSeries OperatorSeries::from_coeffs(const GradedSpace& space, int offset,
                                           const std::vector<GradedMap>& coeffs) {
  OperatorSeries s(space, offset);
  for (std::size_t n = 0; n < coeffs.size(); ++n) s.set_coeff(n, coeffs[n]);
  return s;
}

GradedMap OperatorSeries::coeff(std::size_t n) const {
  if (n < coeffs_.size()) return coeffs_[n];
  return GradedMap::zero(space_, coeff_degree(n, offset_));
}

void OperatorSeries::set_coeff(std::size_t n, const GradedMap& c) {
  if (c.degree() != coeff_degree(n, offset_)) {
    throw DegreeMismatch("coefficient of z^" + std::to_string(n) + " must have degree " +
                         std::to_string(coeff_degree(n, offset_)));
  }
  if (c.source() != space_ || c.target() != space_) {
    throw SpaceMismatch("series coefficient is not an endomorphism of the series space");
  }
  if (n < coeffs_.size()) {
    coeffs_[n] = c;
  } else if (!c.is_zero()) {
    throw DegreeMismatch("nonzero coefficient past the degree bound");
  }
}

bool OperatorSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const GradedMap& c) { return c.is_zero(); });
}

void OperatorSeries::check_compatible(const OperatorSeries& other) const {
  if (space_ != other.space_) throw SpaceMismatch("series on different spaces");
  if (offset_ != other.offset_) throw DegreeMismatch("series of different degree types");
}

OperatorSeries& OperatorSeries::operator+=(const OperatorSeries& other) {
  check_compatible(other);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
  return *this;
}

OperatorSeries& OperatorSeries::operator-=(const OperatorSeries& other) {
  check_compatible(other);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
  return *this;
}

OperatorSeries& OperatorSeries::operator*=(const Scalar& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

OperatorSeries series_mul(const OperatorSeries& a, const OperatorSeries& b) {
  if (a.space() != b.space()) throw SpaceMismatch("series_mul: different spaces");
  OperatorSeries out(a.space(), a.offset() + b.offset());
  for (std::size_t n = 0; n <= out.max_power(); ++n) {
    GradedMap c = out.coeff(n);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > a.max_power() || n - k > b.max_power()) continue;
      c += a.coeff(k) * b.coeff(n - k);
    }
    out.set_coeff(n, c);
  }
  return out;
}

OperatorSeries series_exp(const OperatorSeries& r) {
  if (r.offset() != 0 || !r.zero_constant_term()) {
    throw BadConstantTerm("series_exp needs an isotopy-type series without constant term");
  }
  OperatorSeries out = OperatorSeries::unit(r.space());
  OperatorSeries term = OperatorSeries::unit(r.space());
  for (std::size_t k = 1; k <= r.max_power(); ++k) {
    term = Scalar(1, k) * series_mul(term, r);
    out += term;
  }
  return out;
}

OperatorSeries series_log(const OperatorSeries& u) {
  if (u.offset() != 0 || !(u.coeff(0) == GradedMap::identity(u.space()))) {
    throw BadConstantTerm("series_log needs constant term id");
  }
  OperatorSeries x = u - OperatorSeries::unit(u.space());
  OperatorSeries out(u.space(), 0);
  OperatorSeries xk = OperatorSeries::unit(u.space());
  for (std::size_t k = 1; k <= u.max_power(); ++k) {
    xk = series_mul(xk, x);
    const Scalar c(k % 2 == 1 ? 1 : -1, k);
    out += c * xk;
  }
  return out;
}

OperatorSeries conjugate_differential(const OperatorSeries& r, const GradedMap& d) {
  if (r.offset() != 0 || !r.zero_constant_term()) {
    throw BadConstantTerm("conjugation needs a series without constant term");
  }
  OperatorSeries ad = OperatorSeries::constant(d);
  OperatorSeries out = ad;
  for (std::size_t k = 1; !ad.is_zero(); ++k) {
    ad = Scalar(1, k) * (series_mul(r, ad) - series_mul(ad, r));
    out += ad;
  }
  const OperatorSeries check =
      series_mul(series_exp(r), series_mul(OperatorSeries::constant(d), series_exp(-r)));
  if (!(check == out)) throw InvariantViolation("e^{ad R}(d) differs from e^R d e^{-R}");
  return out;
}

OperatorSeries series_from_isotopy(const InfinityMorphism& f) {
  const GradedSpace& a = f.source().space();
  if (a != f.target().space()) throw SpaceMismatch("an isotopy must stay on one space");
  return OperatorSeries::from_coeffs(a, 0, f.comps());
}

InfinityMorphism isotopy_from_series(const OperatorSeries& s, const Multicomplex& source,
                                     const Multicomplex& target) {
  if (s.offset() != 0) throw DegreeMismatch("isotopy series must have offset 0");
  std::vector<GradedMap> comps = s.coeffs();
  while (comps.size() > 1 && comps.back().is_zero()) comps.pop_back();
  return InfinityMorphism(source, target, std::move(comps));
}

GaugeCheck check_gauge_hodge(const OperatorSeries& r, const Multicomplex& m) {
  const OperatorSeries conj = conjugate_differential(r, m.d());
  GaugeCheck out;
  const std::size_t last = std::max(conj.max_power(), m.deltas().size());
  for (std::size_t n = 0; n <= last; ++n) {
    if (!(conj.coeff(n) == m.delta(n))) {
      out.holds = false;
      out.n = n;
      break;
    }
  }
  return out;
}

Multicomplex gauge_construct(const GradedMap& d, const OperatorSeries& r) {
  if (d.degree() != -1) throw DegreeMismatch("differential must have degree -1");
  if (!(d * d).is_zero()) throw NotSquareZero("d o d != 0");
  std::vector<GradedMap> deltas = conjugate_differential(r, d).coeffs();
  while (deltas.size() > 1 && deltas.back().is_zero()) deltas.pop_back();
  Multicomplex m(d.source(), std::move(deltas));
  if (auto rep = validate_multicomplex(m); !rep.ok()) {
    throw InvariantViolation("gauge_construct: " + rep.summary());
  }
  return m;
}

OperatorSeries mixed_R_from_hodge(const DeformationRetract& r, const GradedMap& delta) {
  const Multicomplex m = Multicomplex::mixed(r.d_big, delta);
  if (const HodgeCheck hc = check_hodge_data(r, m); !hc.holds) {
    throw HodgeDataFails("transferred operator " + std::to_string(hc.n) + " is nonzero");
  }
  const GradedSpace& a = r.big;
  const GradedMap hd = r.h * delta;
  const GradedMap dh = delta * r.h;
  const GradedMap ip = r.i * r.p;
  OperatorSeries out(a, 0);
  std::vector<GradedMap> hd_pow{GradedMap::identity(a)}, dh_pow{GradedMap::identity(a)};
  for (std::size_t n = 1; n <= out.max_power(); ++n) {
    hd_pow.push_back(hd * hd_pow.back());
    dh_pow.push_back(dh * dh_pow.back());
  }
  for (std::size_t n = 1; n <= out.max_power(); ++n) {
    GradedMap c = Scalar(1, n) * hd_pow[n];
    for (std::size_t l = 1; l <= n; ++l) {
      c -= Scalar(1, l) * (hd_pow[l - 1] * ip * dh_pow[n - l + 1]);
    }
    out.set_coeff(n, c);
  }
  if (!check_gauge_hodge(out, m).holds) {
    throw InvariantViolation("mixed_R_from_hodge: gauge equation fails");
  }
  return out;
}

GaugeSearch general_R_from_hodge(const Multicomplex& m) {
  GaugeSearch out;
  const MinimalModel mm = minimal_model(m);
  for (std::size_t n = 1; n < mm.minimal.deltas().size(); ++n) {
    if (!mm.minimal.delta(n).is_zero()) {
      out.obstruction = n;
      return out;
    }
  }
  const Multicomplex plain(m.space(), {m.d()});
  const InfinityMorphism r0 = InfinityMorphism::strict(plain, mm.product.product, mm.r.comp(0));
  if (auto rep = validate_infinity_morphism(r0); !rep.ok()) {
    throw InvariantViolation("p + q is not a chain map onto the product: " + rep.summary());
  }
  const InfinityMorphism phi = compose_infinity(mm.r_inv, r0);
  out.r = series_log(series_from_isotopy(phi));
  if (!check_gauge_hodge(out.r, m).holds) {
    throw InvariantViolation("general_R_from_hodge: gauge equation fails");
  }
  out.found = true;
  return out;
}

}  // namespace hodge
