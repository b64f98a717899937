#include "hodge/graded.hpp"

#include <algorithm>
#include <string>

namespace hodge {

GradedSpace::GradedSpace(const std::map<int, std::size_t>& dims) {
  for (const auto& [k, n] : dims) {
    if (n > 0) dims_.emplace(k, n);
  }
}

std::size_t GradedSpace::dim(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  out.reserve(dims_.size());
  for (const auto& [k, n] : dims_) out.push_back(k);
  return out;
}

int GradedSpace::min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
int GradedSpace::max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }
int GradedSpace::width() const { return max_degree() - min_degree(); }

std::size_t GradedSpace::total_dim() const {
  std::size_t n = 0;
  for (const auto& [k, d] : dims_) n += d;
  return n;
}

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
  auto dims = a.dims();
  for (const auto& [k, n] : b.dims()) dims[k] += n;
  return GradedSpace(dims);
}

GradedMap::GradedMap(GradedSpace source, GradedSpace target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {}

GradedMap GradedMap::zero(const GradedSpace& source, const GradedSpace& target, int degree) {
  return GradedMap(source, target, degree);
}

GradedMap GradedMap::identity(const GradedSpace& space) {
  GradedMap id(space, space, 0);
  for (const auto& [k, n] : space.dims()) id.blocks_.emplace(k, Matrix::identity(n));
  return id;
}

Matrix GradedMap::block(int source_degree) const {
  auto it = blocks_.find(source_degree);
  if (it != blocks_.end()) return it->second;
  return Matrix(target_.dim(source_degree + degree_), source_.dim(source_degree));
}

void GradedMap::set_block(int source_degree, Matrix block) {
  const std::size_t rows = target_.dim(source_degree + degree_);
  const std::size_t cols = source_.dim(source_degree);
  if (block.rows() != rows || block.cols() != cols) {
    throw ShapeMismatch("block at degree " + std::to_string(source_degree) + " has shape " +
                        std::to_string(block.rows()) + "x" + std::to_string(block.cols()) +
                        ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (block.is_zero()) {
    blocks_.erase(source_degree);
  } else {
    blocks_[source_degree] = std::move(block);
  }
}

std::optional<int> GradedMap::first_nonzero_degree() const {
  if (blocks_.empty()) return std::nullopt;
  return blocks_.begin()->first;
}

void GradedMap::check_compatible(const GradedMap& other, const char* what) const {
  if (degree_ != other.degree_) {
    throw DegreeMismatch(std::string(what) + ": degrees " + std::to_string(degree_) + " and " +
                         std::to_string(other.degree_));
  }
  if (source_ != other.source_ || target_ != other.target_) {
    throw SpaceMismatch(std::string(what) + ": maps between different spaces");
  }
}

GradedMap& GradedMap::operator+=(const GradedMap& other) {
  check_compatible(other, "sum");
  for (const auto& [k, b] : other.blocks_) {
    auto it = blocks_.find(k);
    if (it == blocks_.end()) {
      blocks_.emplace(k, b);
    } else {
      it->second += b;
      if (it->second.is_zero()) blocks_.erase(it);
    }
  }
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& other) {
  check_compatible(other, "difference");
  for (const auto& [k, b] : other.blocks_) {
    auto it = blocks_.find(k);
    if (it == blocks_.end()) {
      blocks_.emplace(k, -b);
    } else {
      it->second -= b;
      if (it->second.is_zero()) blocks_.erase(it);
    }
  }
  return *this;
}

GradedMap& GradedMap::operator*=(const Scalar& factor) {
  if (hodge::is_zero(factor)) {
    blocks_.clear();
    return *this;
  }
  for (auto& [k, b] : blocks_) b *= factor;
  return *this;
}

GradedMap operator*(const GradedMap& g, const GradedMap& f) {
  if (f.target_ != g.source_) throw ShapeMismatch("compose: target of f is not source of g");
  GradedMap out(f.source_, g.target_, f.degree_ + g.degree_);
  for (const auto& [k, fb] : f.blocks_) {
    auto it = g.blocks_.find(k + f.degree_);
    if (it == g.blocks_.end()) continue;
    Matrix prod = it->second * fb;
    if (!prod.is_zero()) out.blocks_.emplace(k, std::move(prod));
  }
  return out;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) { return g * f; }

GradedMap lincomb(const std::vector<std::pair<Scalar, GradedMap>>& terms,
                  const GradedSpace& source, const GradedSpace& target, int degree) {
  GradedMap out = GradedMap::zero(source, target, degree);
  for (const auto& [s, f] : terms) out += s * f;
  return out;
}

GradedMap graded_commutator(const GradedMap& a, const GradedMap& b) {
  const bool both_odd = (a.degree() % 2 != 0) && (b.degree() % 2 != 0);
  return both_odd ? a * b + b * a : a * b - b * a;
}

GradedMap direct_sum(const GradedMap& f, const GradedMap& g) {
  if (f.degree() != g.degree()) throw DegreeMismatch("direct sum of maps of different degrees");
  GradedMap out(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                f.degree());
  for (const auto& [k, n] : out.source().dims()) {
    Matrix b = block_diagonal(f.block(k), g.block(k));
    out.set_block(k, std::move(b));
  }
  return out;
}

GradedMap stack(const GradedMap& top, const GradedMap& bottom) {
  if (top.degree() != bottom.degree()) throw DegreeMismatch("stack of maps of different degrees");
  if (top.source() != bottom.source()) throw SpaceMismatch("stack of maps with different sources");
  GradedMap out(top.source(), direct_sum(top.target(), bottom.target()), top.degree());
  for (int k : out.source().degrees()) out.set_block(k, vstack(top.block(k), bottom.block(k)));
  return out;
}

GradedMap concat(const GradedMap& left, const GradedMap& right) {
  if (left.degree() != right.degree()) throw DegreeMismatch("concat of maps of different degrees");
  if (left.target() != right.target()) throw SpaceMismatch("concat of maps with different targets");
  GradedMap out(direct_sum(left.source(), right.source()), left.target(), left.degree());
  for (int k : out.source().degrees()) out.set_block(k, hstack(left.block(k), right.block(k)));
  return out;
}

GradedSpace homology(const GradedMap& d) {
  if (d.degree() != -1) throw DegreeMismatch("homology needs a differential of degree -1");
  if (d.source() != d.target()) throw SpaceMismatch("homology needs an endomorphism");
  if (!(d * d).is_zero()) throw NotSquareZero("d o d != 0");
  std::map<int, std::size_t> dims;
  for (const auto& [k, n] : d.source().dims()) {
    const std::size_t rank_out = rank(d.block(k));
    const std::size_t rank_in = rank(d.block(k + 1));
    dims[k] = n - rank_out - rank_in;
  }
  return GradedSpace(dims);
}

}  // namespace hodge
