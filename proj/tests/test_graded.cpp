#include <doctest.h>

#include "support.hpp"

using namespace hodge;
using hodge::testing::random_map;
using hodge::testing::single_block;
using hodge::testing::space_of;

TEST_CASE("graded spaces") {
  const GradedSpace a = space_of({{-1, 2}, {0, 0}, {2, 1}});
  CHECK(a.dim(-1) == 2);
  CHECK(a.dim(5) == 0);
  CHECK(a.total_dim() == 3);
  CHECK(a.width() == 3);
  CHECK(direct_sum(a, a).dim(-1) == 4);
  CHECK(GradedSpace().width() == 0);
}

TEST_CASE("compose: identities and zero") {
  Rng rng(1);
  const GradedSpace a = space_of({{0, 2}, {1, 3}, {2, 1}});
  const GradedMap f = random_map(rng, a, 1);
  CHECK(compose(GradedMap::identity(a), f) == f);
  CHECK(compose(f, GradedMap::identity(a)) == f);
  CHECK(compose(f, GradedMap::zero(a, -1)).is_zero());
  CHECK(compose(f, GradedMap::zero(a, -1)).degree() == 0);
}

TEST_CASE("compose: single blocks multiply as matrices") {
  const GradedSpace a = space_of({{0, 2}, {1, 2}});
  const Matrix m1{{1, 2}, {3, 4}};
  const Matrix m2{{0, 1}, {1, 1}};
  const GradedMap down = single_block(a, -1, 1, m1);  // A_1 -> A_0
  const GradedMap up = single_block(a, 1, 0, m2);     // A_0 -> A_1
  const GradedMap g = compose(down, up);
  CHECK(g.degree() == 0);
  CHECK(g.block(0) == m1 * m2);
  CHECK(g.block(1).is_zero());
  CHECK(compose(up, down).block(1) == m2 * m1);
}

TEST_CASE("compose rejects mismatched spaces") {
  const GradedSpace a = space_of({{0, 1}});
  const GradedSpace b = space_of({{0, 2}});
  CHECK_THROWS_AS(compose(GradedMap::identity(a), GradedMap::identity(b)), ShapeMismatch);
}

TEST_CASE("lincomb") {
  Rng rng(2);
  const GradedSpace a = space_of({{0, 2}, {2, 2}});
  const GradedMap f = random_map(rng, a, 2);
  CHECK(lincomb({{Scalar(1), f}, {Scalar(-1), f}}, a, a, 2).is_zero());
  const GradedMap z = lincomb({}, a, a, 3);
  CHECK(z.is_zero());
  CHECK(z.degree() == 3);

  const GradedSpace l = space_of({{0, 1}});
  const GradedMap f5 = single_block(l, 0, 0, Matrix{{5}});
  const GradedMap g7 = single_block(l, 0, 0, Matrix{{7}});
  CHECK(lincomb({{Scalar(2), f5}, {Scalar(3), g7}}, l, l, 0).block(0) == Matrix{{31}});
  CHECK_THROWS_AS(lincomb({{Scalar(1), f5}}, l, l, 1), DegreeMismatch);
}

TEST_CASE("graded commutator signs") {
  Rng rng(3);
  const GradedSpace a = space_of({{0, 2}, {1, 2}, {2, 2}, {3, 2}});
  const GradedMap odd1 = random_map(rng, a, -1);
  const GradedMap odd2 = random_map(rng, a, 1);
  const GradedMap even = random_map(rng, a, 2);
  CHECK(graded_commutator(odd1, odd2) == odd1 * odd2 + odd2 * odd1);
  CHECK(graded_commutator(even, odd1) == even * odd1 - odd1 * even);
  CHECK(graded_commutator(odd1, odd1) == Scalar(2) * (odd1 * odd1));
}

TEST_CASE("homology examples") {
  SUBCASE("d = 0") {
    const GradedSpace a = space_of({{0, 2}, {1, 3}});
    CHECK(homology(GradedMap::zero(a, -1)) == a);
  }
  SUBCASE("acyclic pair") {
    const GradedSpace a = space_of({{0, 1}, {1, 1}});
    CHECK(homology(single_block(a, -1, 1, Matrix{{1}})).total_dim() == 0);
  }
  SUBCASE("rank one on 2+2") {
    const GradedSpace a = space_of({{0, 2}, {1, 2}});
    const GradedMap d = single_block(a, -1, 1, Matrix{{1, 0}, {0, 0}});
    const GradedSpace h = homology(d);
    CHECK(h.dim(0) == 1);
    CHECK(h.dim(1) == 1);
  }
  CHECK_THROWS_AS(homology(GradedMap::identity(space_of({{0, 1}}))), DegreeMismatch);
  const GradedSpace c = space_of({{0, 1}, {1, 1}, {2, 1}});
  const GradedMap not_sq = single_block(c, -1, 2, Matrix{{1}}) + single_block(c, -1, 1, Matrix{{1}});
  CHECK_THROWS_AS(homology(not_sq), NotSquareZero);
}

TEST_CASE("homology dims follow rank-nullity on random complexes") {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const GradedSpace a = random_space(rng, 5, 4);
    const GradedMap d = random_differential(rng, a, -1);
    CHECK((d * d).is_zero());
    const GradedSpace h = homology(d);
    for (int k : a.degrees()) {
      const std::size_t rk_out = rank(d.block(k));
      const std::size_t rk_in = rank(d.block(k + 1));
      CHECK(h.dim(k) == a.dim(k) - rk_out - rk_in);
    }
  }
}

TEST_CASE("direct sums, stack and concat") {
  Rng rng(5);
  const GradedSpace a = space_of({{0, 1}, {1, 2}});
  const GradedSpace b = space_of({{0, 2}, {1, 1}});
  const GradedMap f = random_map(rng, a, 1);
  const GradedMap g(b, b, 1);
  const GradedMap fg = direct_sum(f, g);
  CHECK(fg.source() == direct_sum(a, b));
  CHECK(fg.block(0).row_range(0, 2).column_range(0, 1) == f.block(0));

  GradedMap to_a(a, a, 0), to_b(a, b, 0);
  to_a = GradedMap::identity(a);
  to_b.set_block(0, Matrix{{1}, {2}});
  const GradedMap st = stack(to_a, to_b);
  CHECK(st.target() == direct_sum(a, b));
  CHECK(st.block(0) == Matrix{{1}, {1}, {2}});

  GradedMap from_b(b, a, 0);
  from_b.set_block(1, Matrix{{3}, {4}});
  const GradedMap cc = concat(GradedMap::identity(a), from_b);
  CHECK(cc.source() == direct_sum(a, b));
  CHECK(cc.block(1) == Matrix{{1, 0, 3}, {0, 1, 4}});
}
