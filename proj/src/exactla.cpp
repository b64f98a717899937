#include "hodge/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hodge {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  mpz_class n(num.front() == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& value) { return value.get_str(); }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_.size()) throw ShapeMismatch("ragged matrix literal");
    std::size_t c = 0;
    for (const auto& v : row) {
      if (!hodge::is_zero(v)) {
        // Literals like Scalar(2, 4) arrive uncanonicalized.
        Scalar q = v;
        q.canonicalize();
        cols_[c].push_back({r, q});
      }
      ++c;
    }
    ++r;
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].push_back({i, Scalar(1)});
  return m;
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols,
                            const std::vector<MatrixEntry>& entries) {
  Matrix m(rows, cols);
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw ShapeMismatch("entry out of range");
    m.set(e.row, e.col, m.at(e.row, e.col) + e.value);
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<SparseVector> cols) {
  Matrix m;
  m.rows_ = rows;
  for (auto& col : cols) {
    std::sort(col.begin(), col.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    SparseVector clean;
    clean.reserve(col.size());
    for (auto& e : col) {
      if (e.index >= rows) throw ShapeMismatch("column entry out of range");
      if (!clean.empty() && clean.back().index == e.index) {
        clean.back().value += e.value;
        if (hodge::is_zero(clean.back().value)) clean.pop_back();
      } else if (!hodge::is_zero(e.value)) {
        clean.push_back(std::move(e));
      }
    }
    m.cols_.push_back(std::move(clean));
  }
  return m;
}

namespace {

SparseVector::const_iterator find_index(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  return (it != v.end() && it->index == index) ? it : v.end();
}

}  // namespace

Scalar Matrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_.size()) throw ShapeMismatch("index out of range");
  const auto& c = cols_[col];
  auto it = find_index(c, row);
  return it == c.end() ? Scalar(0) : it->value;
}

void Matrix::set(std::size_t row, std::size_t col, const Scalar& value) {
  if (row >= rows_ || col >= cols_.size()) throw ShapeMismatch("index out of range");
  auto& c = cols_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  const bool present = it != c.end() && it->index == row;
  if (hodge::is_zero(value)) {
    if (present) c.erase(it);
  } else if (present) {
    it->value = value;
    it->value.canonicalize();
  } else {
    it = c.insert(it, {row, value});
    it->value.canonicalize();
  }
}

std::vector<MatrixEntry> Matrix::entries() const {
  std::vector<MatrixEntry> out;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    for (const auto& e : cols_[j]) out.push_back({e.index, j, e.value});
  }
  std::sort(out.begin(), out.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool Matrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const SparseVector& c) { return c.empty(); });
}

Matrix Matrix::transpose() const {
  std::vector<SparseVector> rows(rows_);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    for (const auto& e : cols_[j]) rows[e.index].push_back({j, e.value});
  }
  Matrix t;
  t.rows_ = cols_.size();
  t.cols_ = std::move(rows);
  return t;
}

Matrix Matrix::columns(const std::vector<std::size_t>& which) const {
  Matrix m;
  m.rows_ = rows_;
  m.cols_.reserve(which.size());
  for (auto j : which) {
    if (j >= cols_.size()) throw ShapeMismatch("column index out of range");
    m.cols_.push_back(cols_[j]);
  }
  return m;
}

Matrix Matrix::column_range(std::size_t first, std::size_t count) const {
  if (first + count > cols_.size()) throw ShapeMismatch("column range out of bounds");
  Matrix m;
  m.rows_ = rows_;
  m.cols_.assign(cols_.begin() + static_cast<std::ptrdiff_t>(first),
                 cols_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return m;
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw ShapeMismatch("row range out of bounds");
  Matrix m(count, cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    for (const auto& e : cols_[j]) {
      if (e.index >= first && e.index < first + count) {
        m.cols_[j].push_back({e.index - first, e.value});
      }
    }
  }
  return m;
}

void Matrix::place(std::size_t row, std::size_t col, const Matrix& block) {
  if (row + block.rows() > rows_ || col + block.cols() > cols_.size()) {
    throw ShapeMismatch("block does not fit");
  }
  for (std::size_t j = 0; j < block.cols(); ++j) {
    for (std::size_t i = 0; i < block.rows(); ++i) set(row + i, col + j, Scalar(0));
    for (const auto& e : block.cols_[j]) set(row + e.index, col + j, e.value);
  }
}

SparseVector axpy(const SparseVector& x, const Scalar& a, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->index < j->index)) {
      out.push_back(*i++);
    } else if (i == x.end() || j->index < i->index) {
      Scalar v = a * j->value;
      if (!hodge::is_zero(v)) out.push_back({j->index, std::move(v)});
      ++j;
    } else {
      Scalar v = i->value + a * j->value;
      if (!hodge::is_zero(v)) out.push_back({i->index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_.size() != other.cols_.size()) {
    throw ShapeMismatch("matrix sum shape mismatch");
  }
  const Scalar one(1);
  for (std::size_t j = 0; j < cols_.size(); ++j) cols_[j] = axpy(cols_[j], one, other.cols_[j]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_.size() != other.cols_.size()) {
    throw ShapeMismatch("matrix difference shape mismatch");
  }
  const Scalar minus_one(-1);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    cols_[j] = axpy(cols_[j], minus_one, other.cols_[j]);
  }
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& factor) {
  if (hodge::is_zero(factor)) {
    for (auto& c : cols_) c.clear();
    return *this;
  }
  for (auto& c : cols_) {
    for (auto& e : c) e.value *= factor;
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  std::vector<Scalar> acc(a.rows());
  std::vector<char> touched(a.rows(), 0);
  std::vector<std::size_t> touched_list;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    touched_list.clear();
    for (const auto& bk : b.cols_[j]) {
      for (const auto& ai : a.cols_[bk.index]) {
        if (!touched[ai.index]) {
          touched[ai.index] = 1;
          touched_list.push_back(ai.index);
          acc[ai.index] = ai.value * bk.value;
        } else {
          acc[ai.index] += ai.value * bk.value;
        }
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    auto& col = out.cols_[j];
    for (auto i : touched_list) {
      if (!hodge::is_zero(acc[i])) col.push_back({i, acc[i]});
      touched[i] = 0;
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw ShapeMismatch("hstack row mismatch");
  std::vector<SparseVector> cols;
  cols.reserve(left.cols() + right.cols());
  for (std::size_t j = 0; j < left.cols(); ++j) cols.push_back(left.column(j));
  for (std::size_t j = 0; j < right.cols(); ++j) cols.push_back(right.column(j));
  return Matrix::from_columns(left.rows(), std::move(cols));
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw ShapeMismatch("vstack column mismatch");
  std::vector<SparseVector> cols(top.cols());
  for (std::size_t j = 0; j < top.cols(); ++j) {
    cols[j] = top.column(j);
    for (const auto& e : bottom.column(j)) cols[j].push_back({e.index + top.rows(), e.value});
  }
  return Matrix::from_columns(top.rows() + bottom.rows(), std::move(cols));
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  std::vector<SparseVector> cols;
  cols.reserve(a.cols() + b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
  for (std::size_t j = 0; j < b.cols(); ++j) {
    SparseVector c;
    for (const auto& e : b.column(j)) c.push_back({e.index + a.rows(), e.value});
    cols.push_back(std::move(c));
  }
  return Matrix::from_columns(a.rows() + b.rows(), std::move(cols));
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

struct RowEchelon {
  std::vector<SparseVector> rows;  // reduced pivot rows, in pivot order
  std::vector<std::size_t> pivots;
};

RowEchelon reduce_rows(const Matrix& m) {
  const Matrix t = m.transpose();
  std::vector<SparseVector> rows;
  rows.reserve(t.cols());
  for (std::size_t i = 0; i < t.cols(); ++i) rows.push_back(t.column(i));

  std::vector<char> used(rows.size(), 0);
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivots;

  for (std::size_t c = 0; c < m.cols() && pivot_rows.size() < rows.size(); ++c) {
    // Unused rows are zero left of c, so a candidate has its leading entry at c.
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty() || rows[r].front().index != c) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;

    const Scalar inv = 1 / rows[best].front().value;
    for (auto& e : rows[best]) e.value *= inv;

    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best || rows[r].empty()) continue;
      auto it = find_index(rows[r], c);
      if (it == rows[r].end()) continue;
      const Scalar factor = -it->value;
      rows[r] = axpy(rows[r], factor, rows[best]);
    }
    used[best] = 1;
    pivot_rows.push_back(best);
    pivots.push_back(c);
  }

  RowEchelon out;
  out.pivots = std::move(pivots);
  out.rows.reserve(pivot_rows.size());
  for (auto r : pivot_rows) out.rows.push_back(std::move(rows[r]));
  return out;
}

}  // namespace

Echelon row_reduce(const Matrix& m) {
  RowEchelon re = reduce_rows(m);
  Matrix as_cols = Matrix::from_columns(m.cols(), std::move(re.rows));
  return {as_cols.transpose(), std::move(re.pivots)};
}

std::size_t rank(const Matrix& m) { return reduce_rows(m).pivots.size(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("solve: row mismatch");
  const RowEchelon re = reduce_rows(hstack(a, b));
  if (!re.pivots.empty() && re.pivots.back() >= a.cols()) return std::nullopt;
  std::vector<SparseVector> cols(b.cols());
  for (std::size_t j = 0; j < re.rows.size(); ++j) {
    for (const auto& e : re.rows[j]) {
      if (e.index >= a.cols()) cols[e.index - a.cols()].push_back({re.pivots[j], e.value});
    }
  }
  return Matrix::from_columns(a.cols(), std::move(cols));
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw NotInvertible("non-square matrix");
  if (rank(m) != m.rows()) throw NotInvertible("singular matrix");
  return *solve(m, Matrix::identity(m.rows()));
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix(ambient_dim, 0);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix::identity(ambient_dim);
  return s;
}

Subspace Subspace::span(const Matrix& generators) {
  Subspace s;
  s.ambient_dim_ = generators.rows();
  s.basis_ = generators.columns(reduce_rows(generators).pivots);
  return s;
}

Subspace Subspace::from_basis(Matrix basis) {
  if (rank(basis) != basis.cols()) throw InvariantViolation("basis columns are dependent");
  Subspace s;
  s.ambient_dim_ = basis.rows();
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<SparseVector> cols;
  cols.reserve(indices.size());
  for (auto i : indices) cols.push_back({{i, Scalar(1)}});
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix::from_columns(ambient_dim, std::move(cols));
  return s;
}

bool Subspace::contains(const Matrix& vectors) const {
  if (vectors.rows() != ambient_dim_) throw ShapeMismatch("ambient dimension mismatch");
  if (vectors.cols() == 0) return true;
  return solve(basis_, vectors).has_value();
}

Matrix Subspace::coordinates(const Matrix& vectors) const {
  if (vectors.rows() != ambient_dim_) throw ShapeMismatch("ambient dimension mismatch");
  auto x = solve(basis_, vectors);
  if (!x) throw NotContained("vector outside subspace");
  return std::move(*x);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_dim_ == b.ambient_dim_ && a.dim() == b.dim() && a.contains(b);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  return Subspace::span(hstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw ShapeMismatch("ambient dimension mismatch");
  const auto k = kernel_image(hstack(a.basis(), -b.basis())).kernel;
  return Subspace::span(a.basis() * k.basis().row_range(0, a.dim()));
}

Subspace preimage(const Matrix& m, const Subspace& target) {
  if (m.rows() != target.ambient_dim()) throw ShapeMismatch("preimage shape mismatch");
  const auto k = kernel_image(hstack(m, -target.basis())).kernel;
  return Subspace::span(k.basis().row_range(0, m.cols()));
}

KernelImage kernel_image(const Matrix& m) {
  const RowEchelon re = reduce_rows(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : re.pivots) is_pivot[p] = 1;

  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> slot_of(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) {
      slot_of[j] = free_cols.size();
      free_cols.push_back(j);
    }
  }
  std::vector<SparseVector> kcols(free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) kcols[f].push_back({free_cols[f], Scalar(1)});
  for (std::size_t r = 0; r < re.rows.size(); ++r) {
    for (const auto& e : re.rows[r]) {
      if (!is_pivot[e.index]) kcols[slot_of[e.index]].push_back({re.pivots[r], -e.value});
    }
  }

  KernelImage out;
  out.kernel = Subspace::from_basis(Matrix::from_columns(m.cols(), std::move(kcols)));
  out.image = Subspace::from_basis(m.columns(re.pivots));
  return out;
}

Subspace complement(const Subspace& sub, const Subspace& ambient) {
  if (sub.ambient_dim() != ambient.ambient_dim()) throw ShapeMismatch("ambient dimension mismatch");
  if (!ambient.contains(sub)) throw NotContained("complement: sub is not contained in ambient");
  const RowEchelon re = reduce_rows(hstack(sub.basis(), ambient.basis()));
  std::vector<std::size_t> chosen;
  for (auto p : re.pivots) {
    if (p >= sub.dim()) chosen.push_back(p - sub.dim());
  }
  return Subspace::from_basis(ambient.basis().columns(chosen));
}

Subquotient::Subquotient(Subspace numerator, Subspace denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  reps_ = complement(denominator_, numerator_).basis();
  reps_plus_denominator_ = Subspace::from_basis(hstack(reps_, denominator_.basis()));
}

Matrix Subquotient::coordinates(const Matrix& vectors) const {
  return reps_plus_denominator_.coordinates(vectors).row_range(0, reps_.cols());
}

Matrix induced_subquotient_map(const Matrix& m, const Subquotient& src, const Subquotient& dst) {
  if (m.cols() != src.ambient_dim() || m.rows() != dst.ambient_dim()) {
    throw ShapeMismatch("induced map: shape mismatch");
  }
  if (!dst.denominator().contains(m * src.denominator().basis())) {
    throw NotWellDefined("map does not send denominator into denominator");
  }
  const Matrix images = m * src.representatives();
  if (!dst.numerator().contains(images)) {
    throw NotWellDefined("map does not send numerator into numerator");
  }
  return dst.coordinates(images);
}

}  // namespace hodge
