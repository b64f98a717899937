#include "hodge/transfer.hpp"

#include <map>

#include "hodge/random.hpp"

namespace hodge {

namespace {

struct Choice {
  std::map<int, Matrix> h_basis;  // representatives of homology
  std::map<int, Matrix> c_basis;  // complement of the cycles
};

void check_differential(const GradedMap& d) {
  if (d.degree() != -1) throw DegreeMismatch("differential must have degree -1");
  if (d.source() != d.target()) throw SpaceMismatch("differential must be an endomorphism");
  if (!(d * d).is_zero()) throw NotSquareZero("d o d != 0");
}

Matrix image_basis(const GradedMap& d, const std::map<int, Matrix>& c_basis, int k) {
  const std::size_t n = d.source().dim(k);
  auto it = c_basis.find(k + 1);
  if (it == c_basis.end()) return Matrix(n, 0);
  return d.block(k + 1) * it->second;
}

Choice canonical_choice(const GradedMap& d) {
  Choice c;
  const GradedSpace& a = d.source();
  std::map<int, Subspace> cycles;
  for (const auto& [k, n] : a.dims()) {
    cycles[k] = kernel_image(d.block(k)).kernel;
    c.c_basis[k] = complement(cycles[k], Subspace::full(n)).basis();
  }
  for (const auto& [k, n] : a.dims()) {
    const Matrix b = image_basis(d, c.c_basis, k);
    c.h_basis[k] = complement(Subspace::span(b), cycles[k]).basis();
  }
  return c;
}

Splitting build_from_choice(const GradedMap& d, const Choice& choice) {
  const GradedSpace& a = d.source();
  std::map<int, std::size_t> hdims, kdims;
  std::map<int, Matrix> b_basis, pinv;
  for (const auto& [k, n] : a.dims()) {
    b_basis[k] = image_basis(d, choice.c_basis, k);
    const Matrix& hb = choice.h_basis.at(k);
    const Matrix& cb = choice.c_basis.at(k);
    hdims[k] = hb.cols();
    kdims[k] = b_basis[k].cols() + cb.cols();
    pinv[k] = inverse(hstack(hstack(hb, b_basis[k]), cb));
  }
  const GradedSpace hs(hdims), ks(kdims);

  DeformationRetract r{a, hs, GradedMap(a, hs, 0), GradedMap(hs, a, 0), GradedMap(a, a, 1), d,
                       GradedMap::zero(hs, -1)};
  GradedMap incl(ks, a, 0), proj(a, ks, 0);
  for (const auto& [k, n] : a.dims()) {
    const std::size_t nh = hdims[k];
    const std::size_t nb = b_basis[k].cols();
    r.i.set_block(k, choice.h_basis.at(k));
    r.p.set_block(k, pinv[k].row_range(0, nh));
    incl.set_block(k, hstack(b_basis[k], choice.c_basis.at(k)));
    proj.set_block(k, pinv[k].row_range(nh, n - nh));
    auto up = choice.c_basis.find(k + 1);
    if (up != choice.c_basis.end() && nb > 0) {
      r.h.set_block(k, -(up->second * pinv[k].row_range(nh, nb)));
    }
  }
  Splitting s{r, ks, incl, proj, proj * d * incl};
  if (auto defect = retract_defect(s.retract)) {
    throw InvariantViolation("build_retract: " + *defect);
  }
  if (!(proj * incl == GradedMap::identity(ks))) {
    throw InvariantViolation("build_retract: q o incl_K != id");
  }
  return s;
}

bool is_chain_map(const GradedMap& f, const GradedMap& d_src, const GradedMap& d_tgt) {
  return f * d_src == d_tgt * f;
}

// X_n = D_n + sum_{j=1}^{n-1} D_j h X_{n-j}: the sum of D_{i1} h ... h D_{ik}
// over compositions of n.
std::vector<GradedMap> composition_sums(const DeformationRetract& r, const Multicomplex& m,
                                        std::size_t last) {
  std::vector<GradedMap> x(1, GradedMap::zero(r.big, -1));
  for (std::size_t n = 1; n <= last; ++n) {
    GradedMap xn = m.delta(n);
    for (std::size_t j = 1; j < n; ++j) {
      if (j >= m.deltas().size()) break;
      xn += m.delta(j) * (r.h * x[n - j]);
    }
    x.push_back(std::move(xn));
  }
  return x;
}

}  // namespace

std::optional<std::string> retract_defect(const DeformationRetract& r) {
  const GradedMap id_a = GradedMap::identity(r.big);
  if (!(r.p * r.i == GradedMap::identity(r.small))) return "pi != id";
  if (!(r.i * r.p - id_a == r.d_big * r.h + r.h * r.d_big)) return "ip - id != dh + hd";
  if (!is_chain_map(r.p, r.d_big, r.d_small)) return "p is not a chain map";
  if (!is_chain_map(r.i, r.d_small, r.d_big)) return "i is not a chain map";
  if (!(r.h * r.i).is_zero()) return "hi != 0";
  if (!(r.p * r.h).is_zero()) return "ph != 0";
  if (!(r.h * r.h).is_zero()) return "hh != 0";
  return std::nullopt;
}

Splitting build_retract(const GradedMap& d) {
  check_differential(d);
  return build_from_choice(d, canonical_choice(d));
}

Splitting build_retract_randomized(const GradedMap& d, std::uint64_t seed) {
  check_differential(d);
  Rng rng(seed);
  Choice c = canonical_choice(d);
  Choice out;
  for (const auto& [k, n] : d.source().dims()) {
    const Matrix& hb = c.h_basis.at(k);
    const Matrix& cb = c.c_basis.at(k);
    const Matrix b = image_basis(d, c.c_basis, k);
    Matrix h2 = hb * rng.invertible(hb.cols());
    h2 += b * rng.sparse_matrix(b.cols(), hb.cols(), -2, 2, 1, 2);
    const Matrix hbz = hstack(hb, b);
    Matrix c2 = cb * rng.invertible(cb.cols());
    c2 += hbz * rng.sparse_matrix(hbz.cols(), cb.cols(), -2, 2, 1, 2);
    out.h_basis[k] = std::move(h2);
    out.c_basis[k] = std::move(c2);
  }
  return build_from_choice(d, out);
}

TransferOutput transfer_structure(const DeformationRetract& r, const Multicomplex& m) {
  if (m.space() != r.big) throw SpaceMismatch("multicomplex does not live on the retract's space");
  if (!(m.d() == r.d_big)) throw SpaceMismatch("multicomplex differential differs from the retract's");

  const std::size_t last = m.max_operator_index();
  const auto x = composition_sums(r, m, last);

  std::vector<GradedMap> deltas{GradedMap::zero(r.small, -1)};
  std::vector<GradedMap> icomps{r.i}, pcomps{r.p};
  const std::size_t n_max = static_cast<std::size_t>((r.small.width() + 1) / 2);
  for (std::size_t n = 1; n <= last; ++n) {
    GradedMap dn = r.p * x[n] * r.i;
    if (n > n_max && !dn.is_zero()) {
      throw InvariantViolation("transferred operator " + std::to_string(n) +
                               " is nonzero beyond the degree bound");
    }
    deltas.push_back(std::move(dn));
    icomps.push_back(r.h * x[n] * r.i);
    pcomps.push_back(r.p * x[n] * r.h);
  }
  while (deltas.size() > 1 && deltas.back().is_zero()) deltas.pop_back();
  while (icomps.size() > 1 && icomps.back().is_zero()) icomps.pop_back();
  while (pcomps.size() > 1 && pcomps.back().is_zero()) pcomps.pop_back();

  Multicomplex transferred(r.small, std::move(deltas));
  InfinityMorphism i_inf(transferred, m, std::move(icomps));
  InfinityMorphism p_inf(m, transferred, std::move(pcomps));
  return {std::move(transferred), std::move(i_inf), std::move(p_inf), {}};
}

TransferOutput transfer_structure(const Splitting& s, const Multicomplex& m) {
  TransferOutput out = transfer_structure(s.retract, m);
  // With h = -(d|_C)^{-1} the K-components are q_n = -q h D_n.
  out.q_comps.push_back(s.k_projection);
  for (std::size_t n = 1; n < m.length(); ++n) {
    out.q_comps.push_back(-(s.k_projection * s.retract.h * m.delta(n)));
  }
  return out;
}

HodgeCheck check_hodge_data(const DeformationRetract& r, const Multicomplex& m) {
  const TransferOutput t = transfer_structure(r, m);
  HodgeCheck out;
  const auto& deltas = t.transferred.deltas();
  for (std::size_t n = 1; n < deltas.size(); ++n) {
    if (auto k = deltas[n].first_nonzero_degree()) {
      out.holds = false;
      out.n = n;
      out.source_degree = *k;
      out.block = deltas[n].block(*k);
      break;
    }
  }
  return out;
}

MinimalModel minimal_model(const Multicomplex& m) {
  Splitting s = build_retract(m.d());
  TransferOutput t = transfer_structure(s, m);

  Multicomplex minimal = t.transferred;
  Multicomplex trivial(s.k_space, {s.k_differential});
  ProductData prod = product(minimal, trivial);

  const std::size_t len = std::max(t.p_inf.comps().size(), t.q_comps.size());
  std::vector<GradedMap> comps;
  for (std::size_t n = 0; n < len; ++n) {
    GradedMap q = n < t.q_comps.size()
                      ? t.q_comps[n]
                      : GradedMap::zero(m.space(), s.k_space, 2 * static_cast<int>(n));
    comps.push_back(stack(t.p_inf.comp(n), q));
  }
  InfinityMorphism r(m, prod.product, std::move(comps));
  if (auto rep = validate_infinity_morphism(r); !rep.ok()) {
    throw InvariantViolation("minimal_model: r is not an infinity-morphism: " + rep.summary());
  }
  InfinityMorphism r_inv = invert_infinity(r);
  if (auto rep = validate_infinity_morphism(r_inv); !rep.ok()) {
    throw InvariantViolation("minimal_model: r^-1 is not an infinity-morphism: " + rep.summary());
  }
  return {std::move(minimal), std::move(trivial), std::move(prod), std::move(r), std::move(r_inv),
          std::move(s)};
}

}  // namespace hodge
