#include <doctest.h>

#include "hodge/exactla.hpp"
#include "hodge/random.hpp"

using namespace hodge;

namespace {

// Dense rank by textbook elimination; shares no code with row_reduce.
std::size_t dense_rank(const Matrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
  for (const auto& e : m.entries()) a[e.row][e.col] = e.value;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Scalar f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("scalars parse and print in lowest terms") {
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
  CHECK(to_string(parse_scalar("-2")) == "-2");
  CHECK(to_string(parse_scalar("4/2")) == "2");
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("0.5"), std::invalid_argument);
}

TEST_CASE("matrix arithmetic and shapes") {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  CHECK(a * b == Matrix{{2, 1}, {4, 3}});
  CHECK(a + b == Matrix{{1, 3}, {4, 4}});
  CHECK((a - a).is_zero());
  CHECK(a.transpose() == Matrix{{1, 3}, {2, 4}});
  CHECK(hstack(a, b).cols() == 4);
  CHECK(vstack(a, b).rows() == 4);
  CHECK(block_diagonal(a, b).at(2, 3) == 1);
  CHECK_THROWS_AS(a * Matrix(3, 1), ShapeMismatch);
  CHECK_THROWS_AS(a + Matrix(2, 3), ShapeMismatch);
  Matrix z(2, 2);
  z.set(0, 1, Scalar(5));
  z.set(0, 1, Scalar(0));
  CHECK(z.nonzeros() == 0);
}

TEST_CASE("kernel_image examples") {
  SUBCASE("0x0") {
    const KernelImage ki = kernel_image(Matrix(0, 0));
    CHECK(ki.kernel.dim() == 0);
    CHECK(ki.image.dim() == 0);
  }
  SUBCASE("identity") {
    const KernelImage ki = kernel_image(Matrix::identity(3));
    CHECK(ki.kernel.dim() == 0);
    CHECK(ki.image.dim() == 3);
  }
  SUBCASE("rank one") {
    const KernelImage ki = kernel_image(Matrix{{1, 2}, {2, 4}});
    CHECK(ki.kernel.dim() == 1);
    CHECK(ki.kernel.contains(Matrix{{2}, {-1}}));
    CHECK(ki.image.dim() == 1);
    CHECK(ki.image.contains(Matrix{{1}, {2}}));
  }
}

TEST_CASE("kernel_image agrees with a dense rank oracle") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = rng.uniform(0, 6), cols = rng.uniform(0, 6);
    const Matrix m = rng.sparse_matrix(rows, cols, -3, 3, 1, 2);
    const KernelImage ki = kernel_image(m);
    const std::size_t r = dense_rank(m);
    CHECK(rank(m) == r);
    CHECK(ki.image.dim() == r);
    CHECK(ki.kernel.dim() == cols - r);
    CHECK((m * ki.kernel.basis()).is_zero());
    CHECK(ki.image.contains(m));
  }
}

TEST_CASE("solve and inverse") {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.uniform(1, 5);
    const Matrix a = rng.invertible(n);
    CHECK(a * inverse(a) == Matrix::identity(n));
    CHECK(inverse(a) * a == Matrix::identity(n));
    const Matrix b = rng.sparse_matrix(n, 2, -4, 4, 1, 1);
    const auto x = solve(a, b);
    REQUIRE(x);
    CHECK(a * *x == b);
  }
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), NotInvertible);
  CHECK_FALSE(solve(Matrix{{1, 2}, {2, 4}}, Matrix{{1}, {0}}));
}

TEST_CASE("complement examples") {
  CHECK(complement(Subspace::coordinate(2, {0}), Subspace::full(2)) ==
        Subspace::coordinate(2, {1}));
  CHECK(complement(Subspace::full(3), Subspace::full(3)).dim() == 0);
  CHECK(complement(Subspace::span(Matrix{{1}, {1}}), Subspace::full(2)) ==
        Subspace::coordinate(2, {0}));
}

TEST_CASE("subspace lattice identities") {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.uniform(1, 6);
    const Subspace a = Subspace::span(rng.sparse_matrix(n, rng.uniform(0, 4), -2, 2, 1, 2));
    const Subspace b = Subspace::span(rng.sparse_matrix(n, rng.uniform(0, 4), -2, 2, 1, 2));
    const Subspace s = sum(a, b);
    const Subspace i = intersect(a, b);
    CHECK(s.dim() + i.dim() == a.dim() + b.dim());
    CHECK(s.contains(a));
    CHECK(a.contains(i));
    CHECK(b.contains(i));
    const Subspace c = complement(a, Subspace::full(n));
    CHECK(c.dim() + a.dim() == n);
    CHECK(sum(a, c).dim() == n);

    const Matrix m = rng.sparse_matrix(rng.uniform(1, 5), n, -2, 2, 1, 2);
    const Subspace target = Subspace::span(rng.sparse_matrix(m.rows(), 2, -2, 2, 1, 2));
    const Subspace pre = preimage(m, target);
    CHECK(target.contains(m * pre.basis()));
    CHECK(pre.contains(kernel_image(m).kernel));
    CHECK(pre.dim() == kernel_image(m).kernel.dim() +
                           intersect(kernel_image(m).image, target).dim());
  }
}

TEST_CASE("subquotient coordinates and induced maps") {
  SUBCASE("zero map") {
    const Subquotient q(Subspace::full(2), Subspace::zero(2));
    CHECK(induced_subquotient_map(Matrix(2, 2), q, q) == Matrix(2, 2));
  }
  SUBCASE("quotient by zero restricts m") {
    const Subquotient src(Subspace::coordinate(3, {0, 1}), Subspace::zero(3));
    const Subquotient dst(Subspace::full(2), Subspace::zero(2));
    const Matrix m{{1, 2, 3}, {4, 5, 6}};
    const Matrix got = induced_subquotient_map(m, src, dst);
    // Oracle: apply m to the representatives and read off coordinates.
    CHECK(got == dst.coordinates(m * src.representatives()));
    CHECK(got.rows() == 2);
    CHECK(got.cols() == 2);
  }
  SUBCASE("nilpotent map on lines") {
    // m e1 = 0, m e2 = e1; src = Q^2 / span{e1}, dst = Q^2 / span{e2}.
    const Subquotient src(Subspace::full(2), Subspace::coordinate(2, {0}));
    const Subquotient dst(Subspace::full(2), Subspace::coordinate(2, {1}));
    const Matrix m{{0, 1}, {0, 0}};
    // Coset oracle: class of e2 maps to class of e1, which is the generator
    // of dst (e1 is not in span{e2}).
    const Matrix rep = src.representatives();
    REQUIRE(rep.cols() == 1);
    const Matrix image = m * rep;
    const auto coeff = solve(hstack(dst.representatives(), dst.denominator().basis()), image);
    REQUIRE(coeff);
    CHECK(induced_subquotient_map(m, src, dst) == coeff->row_range(0, 1));
    // rep = c e2 maps to c e1 = (c / a) v for the dst representative v = a e1 + b e2.
    const Matrix got = induced_subquotient_map(m, src, dst);
    CHECK(got == Matrix{{rep.at(1, 0) / dst.representatives().at(0, 0)}});
    CHECK_FALSE(got.is_zero());
  }
  SUBCASE("ill-defined maps are rejected") {
    const Subquotient src(Subspace::full(2), Subspace::coordinate(2, {0}));
    const Subquotient dst(Subspace::full(2), Subspace::coordinate(2, {1}));
    CHECK_THROWS_AS(induced_subquotient_map(Matrix::identity(2), src, dst), NotWellDefined);
  }
  CHECK_THROWS_AS(Subquotient(Subspace::coordinate(2, {0}), Subspace::coordinate(2, {1})),
                  NotContained);
}
