#include "hodge/geom.hpp"

#include <algorithm>
#include <numeric>

namespace hodge {

int Mono::weight() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0) + static_cast<int>(idx.size());
}

namespace {

// Sign of sorting the concatenation of two strictly increasing index lists;
// 0 if they overlap.
int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& merged) {
  merged.clear();
  int inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) return 0;
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      merged.push_back(a[i++]);
    } else {
      inversions += static_cast<int>(a.size() - i);
      merged.push_back(b[j++]);
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<int> add_exponents(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

template <class Tag>
PolySum<Tag> product(const PolySum<Tag>& p, const PolySum<Tag>& q) {
  PolySum<Tag> out(std::max(p.dim(), q.dim()));
  std::vector<int> merged;
  for (const auto& [a, c1] : p.terms()) {
    for (const auto& [b, c2] : q.terms()) {
      const int s = merge_sign(a.idx, b.idx, merged);
      if (s == 0) continue;
      out.add({add_exponents(a.alpha, b.alpha), merged}, Scalar(s) * c1 * c2);
    }
  }
  return out;
}

PolyForm contract_single(int j, const PolyForm& a) {
  PolyForm out(a.dim());
  for (const auto& [key, c] : a.terms()) {
    auto it = std::find(key.idx.begin(), key.idx.end(), j);
    if (it == key.idx.end()) continue;
    const auto t = it - key.idx.begin();
    Mono next = key;
    next.idx.erase(next.idx.begin() + t);
    out.add(next, t % 2 == 0 ? c : Scalar(-c));
  }
  return out;
}

// Right derivative in the odd variable theta_j: removing theta_j from
// position t of J costs (-1)^{|J|-1-t}.
PolyVector dtheta_right(const PolyVector& p, int j) {
  PolyVector out(p.dim());
  for (const auto& [key, c] : p.terms()) {
    auto it = std::find(key.idx.begin(), key.idx.end(), j);
    if (it == key.idx.end()) continue;
    const auto t = it - key.idx.begin();
    Mono next = key;
    next.idx.erase(next.idx.begin() + t);
    const bool odd = (static_cast<long>(key.idx.size()) - 1 - t) % 2 != 0;
    out.add(next, odd ? Scalar(-c) : c);
  }
  return out;
}

PolyVector dx(const PolyVector& p, int j) {
  PolyVector out(p.dim());
  for (const auto& [key, c] : p.terms()) {
    if (key.alpha[j] == 0) continue;
    Mono next = key;
    next.alpha[j] -= 1;
    out.add(next, c * key.alpha[j]);
  }
  return out;
}

std::map<int, PolyVector> homogeneous_parts(const PolyVector& p) {
  std::map<int, PolyVector> parts;
  for (const auto& [key, c] : p.terms()) {
    auto [it, ins] = parts.try_emplace(static_cast<int>(key.idx.size()), p.dim());
    it->second.add(key, c);
  }
  return parts;
}

PolyVector schouten_homogeneous(const PolyVector& p, int pd, const PolyVector& q, int qd) {
  const int m = std::max(p.dim(), q.dim());
  PolyVector out(m);
  const bool odd = ((pd - 1) * (qd - 1)) % 2 != 0;
  for (int j = 0; j < m; ++j) {
    out += product(dtheta_right(p, j), dx(q, j));
    const PolyVector back = product(dtheta_right(q, j), dx(p, j));
    if (odd) {
      out += back;
    } else {
      out -= back;
    }
  }
  return out;
}

// Exponent vectors of total degree <= w in lexicographic order.
std::vector<std::vector<int>> exponents(int m, int w) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  if (w >= 0) rec(0, w);
  return out;
}

// Strictly increasing k-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < m; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

std::optional<int> polyvector_degree(const PolyVector& p) {
  std::optional<int> deg;
  for (const auto& [key, c] : p.terms()) {
    const int k = static_cast<int>(key.idx.size());
    if (deg && *deg != k) return std::nullopt;
    deg = k;
  }
  return deg;
}

int coefficient_degree(const PolyVector& p) {
  int out = 0;
  for (const auto& [key, c] : p.terms()) {
    out = std::max(out, std::accumulate(key.alpha.begin(), key.alpha.end(), 0));
  }
  return out;
}

PolyForm d_de_rham(const PolyForm& a) {
  PolyForm out(a.dim());
  for (const auto& [key, c] : a.terms()) {
    for (int j = 0; j < static_cast<int>(key.alpha.size()); ++j) {
      if (key.alpha[j] == 0) continue;
      if (std::binary_search(key.idx.begin(), key.idx.end(), j)) continue;
      Mono next = key;
      next.alpha[j] -= 1;
      const auto pos = std::lower_bound(next.idx.begin(), next.idx.end(), j);
      const int before = static_cast<int>(pos - next.idx.begin());
      next.idx.insert(pos, j);
      out.add(next, Scalar(sign_pow(before) * key.alpha[j]) * c);
    }
  }
  return out;
}

PolyForm contract(const PolyVector& p, const PolyForm& a, ContractionOrder order) {
  PolyForm out(a.dim());
  for (const auto& [key, c] : p.terms()) {
    PolyForm f = a;
    if (order == ContractionOrder::Frozen) {
      for (int j : key.idx) f = contract_single(j, f);
    } else {
      for (auto it = key.idx.rbegin(); it != key.idx.rend(); ++it) f = contract_single(*it, f);
    }
    for (const auto& [fk, fc] : f.terms()) {
      out.add({add_exponents(fk.alpha, key.alpha), fk.idx}, fc * c);
    }
  }
  return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) { return product(a, b); }
PolyVector wedge(const PolyVector& p, const PolyVector& q) { return product(p, q); }

PolyVector schouten(const PolyVector& p, const PolyVector& q) {
  PolyVector out(std::max(p.dim(), q.dim()));
  for (const auto& [pd, pp] : homogeneous_parts(p)) {
    for (const auto& [qd, qq] : homogeneous_parts(q)) out += schouten_homogeneous(pp, pd, qq, qd);
  }
  return out;
}

bool check_contraction_identity(const PolyVector& p, const PolyVector& q, int max_weight,
                                ContractionOrder order) {
  if (max_weight < 0) throw WindowTooSmall("check_contraction_identity needs a weight >= 0");
  if (p.is_zero() || q.is_zero()) return true;
  const auto pd = polyvector_degree(p);
  const auto qd = polyvector_degree(q);
  if (!pd || !qd) throw DegreeMismatch("contraction identity needs homogeneous polyvectors");
  const int m = std::max(p.dim(), q.dim());
  const PolyVector bracket = schouten(p, q);

  auto ip = [&](const PolyForm& x) { return contract(p, x, order); };
  auto iq = [&](const PolyForm& x) { return contract(q, x, order); };
  // [i(Q), d] = i(Q) d - (-1)^q d i(Q): form degrees -q and +1.
  auto l = [&](const PolyForm& x) {
    return iq(d_de_rham(x)) - Scalar(sign_pow(*qd)) * d_de_rham(iq(x));
  };
  const Scalar s(sign_pow((1 - *qd) * *pd));

  const FormAlgebra a(m, max_weight);
  for (int k = 0; k <= m; ++k) {
    for (const Mono& key : a.basis(k)) {
      PolyForm x(m);
      x.add(key, Scalar(1));
      const PolyForm lhs = contract(bracket, x, order);
      const PolyForm rhs = Scalar(-1) * (l(ip(x)) - s * ip(l(x)));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

bool verify_poisson(const PolyVector& w) { return schouten(w, w).is_zero(); }

std::string to_string(const PolyVector& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : p.terms()) {
    std::string coeff = hodge::to_string(c);
    if (!out.empty()) {
      if (coeff.front() == '-') {
        out += " - ";
        coeff.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    std::string mono;
    for (std::size_t j = 0; j < key.alpha.size(); ++j) {
      if (key.alpha[j] == 0) continue;
      mono += (mono.empty() ? "" : "*") + ("x" + std::to_string(j + 1));
      if (key.alpha[j] > 1) mono += "^" + std::to_string(key.alpha[j]);
    }
    std::string vec;
    for (int i : key.idx) vec += (vec.empty() ? "" : "^") + ("d" + std::to_string(i + 1));
    std::string term;
    if (coeff == "-1" && !(mono.empty() && vec.empty())) term = "-";
    else if (coeff != "1" || (mono.empty() && vec.empty())) term = coeff + " ";
    if (!mono.empty()) term += mono + " ";
    term += vec;
    while (!term.empty() && term.back() == ' ') term.pop_back();
    out += term;
  }
  return out;
}

bool verify_jacobi(const PolyVector& w, const PolyVector& e) {
  return schouten(w, w) == Scalar(2) * wedge(e, w) && schouten(e, w).is_zero();
}

// ---------------------------------------------------------------------------

FormAlgebra::FormAlgebra(int m, int max_weight) : m_(m), d_(max_weight) {
  if (m < 0) throw WindowTooSmall("dimension must be nonnegative");
  std::map<int, std::size_t> dims;
  for (int k = 0; k <= m; ++k) {
    auto& list = basis_[k];
    for (const auto& idx : subsets(m, k)) {
      for (const auto& alpha : exponents(m, max_weight - k)) list.push_back({alpha, idx});
    }
    for (std::size_t j = 0; j < list.size(); ++j) index_.emplace(list[j], j);
    dims[-k] = list.size();
  }
  space_ = GradedSpace(dims);
}

const std::vector<Mono>& FormAlgebra::basis(int form_degree) const {
  static const std::vector<Mono> empty;
  auto it = basis_.find(form_degree);
  return it == basis_.end() ? empty : it->second;
}

std::size_t FormAlgebra::index(const Mono& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) {
    std::string s = "x^(";
    for (int e : key.alpha) s += std::to_string(e) + ",";
    s += ") dx(";
    for (int e : key.idx) s += std::to_string(e) + ",";
    throw WindowTooSmall("monomial " + s + ") outside the weight window");
  }
  return it->second;
}

Matrix FormAlgebra::column(const PolyForm& a, int form_degree) const {
  Matrix out(basis(form_degree).size(), 1);
  for (const auto& [key, c] : a.terms()) {
    if (static_cast<int>(key.idx.size()) != form_degree) continue;
    out.set(index(key), 0, c);
  }
  return out;
}

PolyForm FormAlgebra::form(const Matrix& column, int form_degree) const {
  PolyForm out(m_);
  const auto& b = basis(form_degree);
  for (const auto& e : column.column(0)) out.add(b[e.index], e.value);
  return out;
}

PolyForm FormAlgebra::apply(const GradedMap& op, const PolyForm& a) const {
  PolyForm out(m_);
  for (int k = 0; k <= m_; ++k) {
    const int target = k - op.degree();
    if (space_.dim(-target) == 0 || space_.dim(-k) == 0) continue;
    out += form(op.block(-k) * column(a, k), target);
  }
  return out;
}

GradedMap FormAlgebra::matrix(int shift, const std::function<PolyForm(const PolyForm&)>& op) const {
  GradedMap out(space_, space_, -shift);
  for (int k = 0; k <= m_; ++k) {
    const auto& src = basis(k);
    const std::size_t rows = basis(k + shift).size();
    if (src.empty()) continue;
    std::vector<MatrixEntry> entries;
    for (std::size_t j = 0; j < src.size(); ++j) {
      PolyForm x(m_);
      x.add(src[j], Scalar(1));
      const PolyForm y = op(x);
      for (const auto& [key, c] : y.terms()) {
        if (static_cast<int>(key.idx.size()) != k + shift) {
          throw InvariantViolation("operator does not have form-degree shift " +
                                   std::to_string(shift));
        }
        entries.push_back({index(key), j, c});
      }
    }
    if (rows > 0) out.set_block(-k, Matrix::from_entries(rows, src.size(), entries));
  }
  return out;
}

GradedMap d_de_rham(const FormAlgebra& a) {
  return a.matrix(1, [](const PolyForm& x) { return d_de_rham(x); });
}

GradedMap contraction(const PolyVector& p, const FormAlgebra& a, ContractionOrder order) {
  if (p.is_zero()) return GradedMap::zero(a.space(), 0);
  const auto deg = polyvector_degree(p);
  if (!deg) throw DegreeMismatch("contraction needs a homogeneous polyvector");
  return a.matrix(-*deg, [&](const PolyForm& x) { return contract(p, x, order); });
}

GradedMap left_multiplication(const PolyForm& b, const FormAlgebra& a) {
  std::optional<int> deg;
  for (const auto& [key, c] : b.terms()) {
    const int k = static_cast<int>(key.idx.size());
    if (deg && *deg != k) throw DegreeMismatch("left multiplication needs a homogeneous form");
    deg = k;
  }
  if (!deg) return GradedMap::zero(a.space(), 0);
  return a.matrix(*deg, [&](const PolyForm& x) {
    PolyForm out(a.dim());
    const PolyForm y = wedge(b, x);
    for (const auto& [key, c] : y.terms()) {
      if (key.weight() <= a.max_weight()) out.add(key, c);
    }
    return out;
  });
}

GradedMap koszul_delta(const PolyVector& w, const FormAlgebra& a) {
  if (!w.is_zero() && polyvector_degree(w) != 2) {
    throw DegreeMismatch("koszul_delta needs a bivector");
  }
  const GradedMap iw = w.is_zero() ? GradedMap::zero(a.space(), 2) : contraction(w, a);
  const GradedMap d = d_de_rham(a);
  return iw * d - d * iw;
}

namespace {

GradedMap bivector_contraction(const PolyVector& w, const FormAlgebra& a) {
  if (w.is_zero()) return GradedMap::zero(a.space(), 2);
  if (polyvector_degree(w) != 2) throw DegreeMismatch("expected a bivector");
  return contraction(w, a);
}

GradedMap vector_contraction(const PolyVector& e, const FormAlgebra& a) {
  if (e.is_zero()) return GradedMap::zero(a.space(), 1);
  if (polyvector_degree(e) != 1) throw DegreeMismatch("expected a vector field");
  return contraction(e, a);
}

OperatorSeries linear_gauge(const GradedMap& iw) {
  OperatorSeries r(iw.source(), 0);
  if (r.max_power() >= 1) r.set_coeff(1, iw);
  return r;
}

void require_jacobi(const PolyVector& w, const PolyVector& e) {
  const PolyVector lhs = schouten(w, w) - Scalar(2) * wedge(e, w);
  if (!lhs.is_zero()) throw NotJacobi("[w, w] - 2 E^w = " + to_string(lhs) + " != 0");
  const PolyVector ew = schouten(e, w);
  if (!ew.is_zero()) throw NotJacobi("[E, w] = " + to_string(ew) + " != 0");
}

void require_valid(const Multicomplex& m, const char* what) {
  if (auto rep = validate_multicomplex(m); !rep.ok()) {
    throw InvariantViolation(std::string(what) + ": " + rep.summary());
  }
}

}  // namespace

GeometricComplex poisson_mixed_complex(const PolyVector& w, const FormAlgebra& a) {
  if (!verify_poisson(w)) throw NotPoisson("[w, w] = " + to_string(schouten(w, w)) + " != 0");
  const GradedMap iw = bivector_contraction(w, a);
  const GradedMap d = d_de_rham(a);
  Multicomplex m = Multicomplex::mixed(d, iw * d - d * iw);
  require_valid(m, "poisson_mixed_complex");
  OperatorSeries r = linear_gauge(iw);
  if (!check_gauge_hodge(r, m).holds) {
    throw InvariantViolation("poisson_mixed_complex: e^{i(w)z} d e^{-i(w)z} != d + Delta z");
  }
  return {std::move(m), std::move(r)};
}

GeometricComplex jacobi_multicomplex(const PolyVector& w, const PolyVector& e,
                                     const FormAlgebra& a) {
  require_jacobi(w, e);
  const GradedMap iw = bivector_contraction(w, a);
  const GradedMap ie = vector_contraction(e, a);
  const GradedMap d = d_de_rham(a);
  const GradedMap delta = iw * d - d * iw;
  const GradedMap delta2 = ie * iw;
  if (!(iw * delta - delta * iw == Scalar(2) * delta2)) {
    throw InvariantViolation("jacobi_multicomplex: [i(w), Delta] != 2 i(E) i(w)");
  }
  Multicomplex m(a.space(), {d, delta, delta2});
  require_valid(m, "jacobi_multicomplex");
  OperatorSeries r = linear_gauge(iw);
  if (!check_gauge_hodge(r, m).holds) {
    throw InvariantViolation("jacobi_multicomplex: gauge identity fails");
  }
  return {std::move(m), std::move(r)};
}

BasicComplex basic_subcomplex(const PolyVector& w, const PolyVector& e, const FormAlgebra& a) {
  require_jacobi(w, e);
  const GradedMap iw = bivector_contraction(w, a);
  const GradedMap ie = vector_contraction(e, a);
  const GradedMap d = d_de_rham(a);
  const GradedMap delta = iw * d - d * iw;
  if (!(ie * delta + delta * ie).is_zero()) {
    throw InvariantViolation("basic_subcomplex: i(E) Delta + Delta i(E) != 0");
  }
  const GradedMap ied = ie * d;

  std::map<int, Subspace> basic;
  std::map<int, std::size_t> dims;
  for (const auto& [k, n] : a.space().dims()) {
    basic[k] = kernel_image(vstack(ie.block(k), ied.block(k))).kernel;
    dims[k] = basic[k].dim();
  }
  const GradedSpace bs(dims);

  GradedMap incl(bs, a.space(), 0);
  for (const auto& [k, s] : basic) {
    if (s.dim() > 0) incl.set_block(k, s.basis());
  }
  auto restrict = [&](const GradedMap& op, const char* name) {
    GradedMap out(bs, bs, op.degree());
    for (const auto& [k, s] : basic) {
      if (s.dim() == 0) continue;
      auto tgt = basic.find(k + op.degree());
      const Matrix image = op.block(k) * s.basis();
      if (tgt == basic.end()) {
        if (!image.is_zero()) throw InvariantViolation(std::string(name) + " leaves the basic forms");
        continue;
      }
      try {
        out.set_block(k, tgt->second.coordinates(image));
      } catch (const NotContained&) {
        throw InvariantViolation(std::string(name) + " leaves the basic forms");
      }
    }
    return out;
  };
  Multicomplex m(bs, {restrict(d, "d"), restrict(delta, "Delta")});
  require_valid(m, "basic_subcomplex");
  return {std::move(m), std::move(incl)};
}

bool operator_order(const GradedMap& op, const FormAlgebra& a, int k) {
  if (k < -1) throw WindowTooSmall("order bound must be >= -1");
  if (op.source() != a.space() || op.target() != a.space()) {
    throw SpaceMismatch("operator does not act on the form algebra");
  }
  if (k == -1) return op.is_zero();

  // Largest weight increase of op.
  int raise = 0;
  for (const auto& [src_deg, block] : op.blocks()) {
    const auto& src = a.basis(-src_deg);
    const auto& tgt = a.basis(-(src_deg + op.degree()));
    for (const auto& e : block.entries()) {
      raise = std::max(raise, tgt[e.row].weight() - src[e.col].weight());
    }
  }
  const int window = a.max_weight() - k - 1 - raise;
  if (window < 0) throw WindowTooSmall("weight window too small for an order check");

  const int m = a.dim();
  // Generators 0..m-1 are x_j (even), m..2m-1 are dx_j (odd).
  auto generator = [&](int g) {
    std::vector<int> alpha(m, 0);
    if (g < m) {
      alpha[g] = 1;
      return PolyForm::term(m, alpha, {});
    }
    return PolyForm::term(m, alpha, {g - m});
  };
  std::vector<PolyForm> gens;
  for (int g = 0; g < 2 * m; ++g) gens.push_back(generator(g));

  std::vector<int> seq(k + 1, 0);
  std::function<PolyForm(std::size_t, const PolyForm&)> nested = [&](std::size_t depth,
                                                                     const PolyForm& x) {
    if (depth == 0) return a.apply(op, x);
    int parity = op.degree();
    for (std::size_t t = 0; t + 1 < depth; ++t) parity += seq[t] >= m ? 1 : 0;
    const int g = seq[depth - 1];
    const bool both_odd = (parity % 2 != 0) && g >= m;
    const PolyForm inner = wedge(gens[g], nested(depth - 1, x));
    PolyForm out = nested(depth - 1, wedge(gens[g], x));
    if (both_odd) {
      out += inner;
    } else {
      out -= inner;
    }
    return out;
  };

  // Graded commutators with left multiplications graded-commute, so
  // nondecreasing generator sequences suffice.
  std::function<bool(std::size_t, int)> all_vanish = [&](std::size_t pos, int start) {
    if (pos == seq.size()) {
      for (int deg = 0; deg <= m; ++deg) {
        for (const Mono& key : a.basis(deg)) {
          if (key.weight() > window) continue;
          PolyForm x(m);
          x.add(key, Scalar(1));
          if (!nested(seq.size(), x).is_zero()) return false;
        }
      }
      return true;
    }
    for (int g = start; g < 2 * m; ++g) {
      seq[pos] = g;
      if (!all_vanish(pos + 1, g)) return false;
    }
    return true;
  };
  return all_vanish(0, 0);
}

Multicomplex export_multicomplex(const FormAlgebra& a, std::vector<GradedMap> deltas) {
  if (deltas.empty()) deltas.push_back(GradedMap::zero(a.space(), -1));
  return Multicomplex(a.space(), std::move(deltas));
}

}  // namespace hodge
