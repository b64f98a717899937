#pragma once

// Exact sparse linear algebra over the rationals.
//
// Matrices are stored column-major with sorted sparse columns. Every basis
// choice follows the leftmost-pivot rule, so results depend only on the input
// ordering.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "hodge/errors.hpp"
#include "hodge/rational.hpp"

namespace hodge {

struct SparseEntry {
  std::size_t index;
  Scalar value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted by index, no zero values.
using SparseVector = std::vector<SparseEntry>;

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  /// Dense construction from row lists; convenient in tests.
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_entries(std::size_t rows, std::size_t cols,
                             const std::vector<MatrixEntry>& entries);
  static Matrix from_columns(std::size_t rows, std::vector<SparseVector> cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_.size(); }
  bool empty_shape() const noexcept { return rows_ == 0 || cols_.empty(); }

  Scalar at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, const Scalar& value);

  const SparseVector& column(std::size_t col) const { return cols_[col]; }
  std::vector<MatrixEntry> entries() const;
  std::size_t nonzeros() const;
  bool is_zero() const;

  Matrix transpose() const;
  Matrix columns(const std::vector<std::size_t>& which) const;
  Matrix column_range(std::size_t first, std::size_t count) const;
  Matrix row_range(std::size_t first, std::size_t count) const;
  /// Copies `block` into this matrix with its top-left corner at (row, col).
  void place(std::size_t row, std::size_t col, const Matrix& block);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Scalar& factor);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= Scalar(-1); }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> cols_;
};

Matrix hstack(const Matrix& left, const Matrix& right);
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// Block-diagonal matrix diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);

SparseVector axpy(const SparseVector& x, const Scalar& a, const SparseVector& y);

/// Reduced row echelon form: `reduced` holds the rank nonzero rows, `pivots`
/// their pivot columns in increasing order.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Some X with a * X = b, or nullopt when the system is inconsistent. Free
/// variables are set to zero.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Two-sided inverse of a square matrix; throws NotInvertible.
Matrix inverse(const Matrix& m);

/// A subspace of Q^ambient_dim given by a column basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Span of arbitrary columns; keeps the pivot columns only.
  static Subspace span(const Matrix& generators);
  /// Columns must already be independent (checked).
  static Subspace from_basis(Matrix basis);
  /// Span of the given standard basis vectors.
  static Subspace coordinate(std::size_t ambient_dim,
                             const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  bool contains(const Matrix& vectors) const;
  bool contains(const Subspace& other) const { return contains(other.basis_); }
  /// Coordinates of each column of `vectors` in this basis; throws
  /// NotContained when a column lies outside the subspace.
  Matrix coordinates(const Matrix& vectors) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// { x : m x in target }.
Subspace preimage(const Matrix& m, const Subspace& target);

struct KernelImage {
  Subspace kernel;
  Subspace image;
};

KernelImage kernel_image(const Matrix& m);

/// C with sub (+) C = ambient, chosen greedily among ambient's basis columns.
/// Throws NotContained if sub is not inside ambient.
Subspace complement(const Subspace& sub, const Subspace& ambient);

/// numerator / denominator with a fixed set of representatives.
class Subquotient {
 public:
  Subquotient() = default;
  /// Throws NotContained unless denominator is inside numerator.
  Subquotient(Subspace numerator, Subspace denominator);

  const Subspace& numerator() const noexcept { return numerator_; }
  const Subspace& denominator() const noexcept { return denominator_; }
  /// Columns spanning a complement of the denominator in the numerator.
  const Matrix& representatives() const noexcept { return reps_; }
  std::size_t dim() const noexcept { return reps_.cols(); }
  std::size_t ambient_dim() const noexcept { return numerator_.ambient_dim(); }

  /// Class coordinates of numerator vectors; throws NotContained otherwise.
  Matrix coordinates(const Matrix& vectors) const;

 private:
  Subspace numerator_;
  Subspace denominator_;
  Matrix reps_;
  Subspace reps_plus_denominator_;
};

/// Matrix of the map induced by m from src to dst. Throws NotWellDefined
/// when m does not send src.numerator into dst.numerator and src.denominator
/// into dst.denominator.
Matrix induced_subquotient_map(const Matrix& m, const Subquotient& src,
                               const Subquotient& dst);

}  // namespace hodge
