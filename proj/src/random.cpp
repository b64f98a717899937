#include "hodge/random.hpp"

namespace hodge {

int Rng::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

bool Rng::chance(int num, int den) { return uniform(0, den - 1) < num; }

Matrix Rng::sparse_matrix(std::size_t rows, std::size_t cols, int lo, int hi, int num, int den) {
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (chance(num, den)) m.set(i, j, Scalar(uniform(lo, hi)));
    }
  }
  return m;
}

Matrix Rng::invertible(std::size_t n) {
  Matrix lower = Matrix::identity(n);
  Matrix upper = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (chance(1, 2)) lower.set(i, j, Scalar(uniform(-1, 1)));
      if (chance(1, 2)) upper.set(j, i, Scalar(uniform(-1, 1)));
    }
  }
  Matrix diag(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = uniform(1, 2) * (chance(1, 2) ? 1 : -1);
    diag.set(i, i, Scalar(v));
  }
  return lower * diag * upper;
}

}  // namespace hodge
