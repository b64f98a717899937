#include <doctest.h>

#include "support.hpp"

using namespace hodge;
using hodge::testing::mixed_hodge_instance;
using hodge::testing::mixed_obstructed_instance;
using hodge::testing::single_block;
using hodge::testing::space_of;

namespace {

// Under E^1_{s,n} = H_{n+2s}: d^1 lifted through i equals p D_1 i.
void check_d1_oracle(const Multicomplex& m) {
  const TotalComplex t = total_complex(m);
  const Splitting sp = build_retract(m.d());
  const DeformationRetract& r = sp.retract;
  const GradedMap d1 = r.p * m.delta(1) * r.i;
  const SpectralPage e1 = page(t, 1);
  for (const auto& [bd, dr] : e1.differentials) {
    const auto [s, n] = bd;
    const int k = n + 2 * s;
    const Subquotient& src = e1.entries.at(bd);
    REQUIRE(src.dim() == r.small.dim(k));
    if (src.dim() == 0) continue;
    const Matrix lift = src.coordinates(homology_lift(t, s, n, {r.i}));
    auto tgt = e1.entries.find({s + 1, n - 1});
    if (tgt == e1.entries.end()) continue;
    const Matrix tgt_lift = tgt->second.coordinates(homology_lift(t, s + 1, n - 1, {r.i}));
    CHECK(dr * lift == tgt_lift * d1.block(k));
  }
}

}  // namespace

TEST_CASE("total complex layout") {
  SUBCASE("zero multicomplex") {
    const TotalComplex t = total_complex(Multicomplex::zero(space_of({{0, 2}, {1, 1}})));
    for (int n = t.lo(); n <= t.hi(); ++n) CHECK(t.boundary(n).is_zero());
  }
  SUBCASE("one nonzero slot per total degree on a 2-term complex") {
    const GradedSpace a = space_of({{0, 1}, {1, 1}});
    const TotalComplex t = total_complex(Multicomplex(a, {single_block(a, -1, 1, Matrix{{1}})}));
    for (int n = t.lo(); n <= t.hi(); ++n) {
      int nonzero = 0;
      for (int s : t.slots(n)) {
        const int k = n + 2 * s;
        CHECK(((k % 2) + 2) % 2 == ((n % 2) + 2) % 2);
        if (a.dim(k) > 0) ++nonzero;
      }
      // A_{n+2s} != 0 forces n + 2s in {0, 1}: exactly one s per n.
      CHECK(nonzero == 1);
      CHECK(t.dim(n) == 1);
    }
  }
  CHECK_THROWS_AS(TotalComplex(Multicomplex::zero(space_of({{0, 1}})), 0, 1), WindowTooSmall);
  const GradedSpace c = space_of({{0, 1}, {1, 1}, {2, 1}});
  const Multicomplex bad(c, {single_block(c, -1, 1, Matrix{{1}}) + single_block(c, -1, 2, Matrix{{1}})});
  CHECK_THROWS_AS(total_complex(bad), InvalidMulticomplex);
}

TEST_CASE("boundary squares to zero and the filtration decreases") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Multicomplex m = generate(seed % 2 ? "a" : "b", seed).m;
    const TotalComplex t = total_complex(m);
    for (int n = t.lo() + 1; n <= t.hi(); ++n) {
      CHECK((t.boundary(n - 1) * t.boundary(n)).is_zero());
      for (int s : t.slots(n)) {
        CHECK(t.filtration(s, n).contains(t.filtration(s + 1, n)));
        CHECK(t.filtration(s, n - 1).contains(t.boundary(n) * t.filtration(s, n).basis()));
      }
    }
  }
}

TEST_CASE("page 1 of a plain complex is homology along every row") {
  Rng rng(41);
  const GradedSpace a = space_of({{0, 2}, {1, 3}, {2, 2}, {3, 1}});
  const GradedMap d = random_differential(rng, a, -1);
  const GradedSpace h = homology(d);
  const TotalComplex t = total_complex(Multicomplex(a, {d}));
  const SpectralPage e1 = page(t, 1);
  for (const auto& [bd, sq] : e1.entries) CHECK(sq.dim() == h.dim(bd.second + 2 * bd.first));
  CHECK(e1.differentials_vanish());
  CHECK(degenerates_at_one(t).degenerates);
}

TEST_CASE("d = 0 and delta != 0 gives a nonzero d^1") {
  const GradedSpace a = space_of({{0, 1}, {1, 1}});
  const Multicomplex m =
      Multicomplex::mixed(GradedMap::zero(a, -1), single_block(a, 1, 0, Matrix{{1}}));
  const TotalComplex t = total_complex(m);
  const SpectralPage e1 = page(t, 1);
  const SpectralPage e2 = page(t, 2);
  CHECK_FALSE(e1.differentials_vanish());
  bool smaller = false;
  for (int n = t.lo() + 1; n < t.hi(); ++n) smaller = smaller || e2.total_dim(n) < e1.total_dim(n);
  CHECK(smaller);
  const Degeneration deg = degenerates_at_one(t);
  CHECK_FALSE(deg.degenerates);
  CHECK(deg.r == 1);
}

TEST_CASE("d^1 matches p D_1 i") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    check_d1_oracle(mixed_hodge_instance(seed));
    check_d1_oracle(mixed_obstructed_instance(seed));
  }
}

TEST_CASE("d^2 matches the transferred D'_2 when d^1 = 0") {
  int nonzero = 0, nonzero_d2 = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Multicomplex m = hodge::testing::d1_zero_instance(seed);
    REQUIRE(validate_multicomplex(m).ok());
    const Splitting sp = build_retract(m.d());
    const TransferOutput tr = transfer_structure(sp, m);
    REQUIRE(tr.transferred.delta(1).is_zero());
    if (!tr.transferred.delta(2).is_zero()) ++nonzero;
    const TotalComplex t = total_complex(m);
    const SpectralPage e2 = page(t, 2);
    const std::vector<GradedMap> lift_comps{tr.i_inf.comp(0), tr.i_inf.comp(1)};
    for (const auto& [bd, dr] : e2.differentials) {
      const auto [s, n] = bd;
      const Subquotient& src = e2.entries.at(bd);
      auto tgt = e2.entries.find({s + 2, n - 1});
      if (src.dim() == 0 || tgt == e2.entries.end()) continue;
      const Matrix lift = src.coordinates(homology_lift(t, s, n, lift_comps));
      const Matrix tgt_lift = tgt->second.coordinates(homology_lift(t, s + 2, n - 1, lift_comps));
      CHECK(dr * lift == tgt_lift * tr.transferred.delta(2).block(n + 2 * s));
      if (!dr.is_zero()) ++nonzero_d2;
    }
  }
  CHECK(nonzero > 20);
  CHECK(nonzero_d2 > 20);
  const GradedSpace h = space_of({{0, 1}, {3, 1}});
  GradedMap d2(h, h, 3);
  d2.set_block(0, Matrix{{1}});
  const Multicomplex m(h, {GradedMap::zero(h, -1), GradedMap::zero(h, 1), d2});
  const TotalComplex t = total_complex(m);
  CHECK(page(t, 1).differentials_vanish());
  CHECK_FALSE(page(t, 2).differentials_vanish());
  CHECK(degenerates_at_one(t).r == 2);
}

TEST_CASE("pages are homologies of the previous page") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Multicomplex m = generate(seed % 2 ? "a" : "b", seed).m;
    const TotalComplex t = total_complex(m);
    for (int r = 1; r <= 3; ++r) {
      CHECK(pages_consistent(t, r));
      const SpectralPage p = page(t, r);
      for (const auto& [bd, dr] : p.differentials) {
        auto next = p.differentials.find({bd.first + r, bd.second - 1});
        if (next == p.differentials.end() || dr.rows() == 0) continue;
        CHECK((next->second * dr).is_zero());
      }
    }
  }
}

TEST_CASE("degeneration agrees with Hodge data in both truth values") {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Multicomplex m = seed % 2 ? generate_gauge_orbit(seed).m : mixed_obstructed_instance(seed);
    const bool hodge = check_hodge_data(build_retract(m.d()).retract, m).holds;
    const bool deg = degenerates_at_one(total_complex(m)).degenerates;
    CHECK(hodge == deg);
    (deg ? yes : no)++;
  }
  CHECK(yes == 50);
  CHECK(no == 50);
}
