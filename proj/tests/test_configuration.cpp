#include <doctest.h>

#include <cmath>
#include <set>

#include "sops/errors.hpp"
#include "support.hpp"

using namespace testing;
using sops::Move;

TEST_CASE("lattice neighbours are symmetric and edges index both endpoints") {
  const LatticeGeometry g(6);
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    std::set<SiteIndex> seen;
    for (int d = 0; d < 6; ++d) {
      const SiteIndex w = g.neighbor(s, d);
      seen.insert(w);
      CHECK(g.neighbor(w, sops::opposite(d)) == s);
      CHECK(g.direction_between(s, w) == d);
      CHECK(g.edge(s, d) == g.edge(w, sops::opposite(d)));
    }
    CHECK(seen.size() == 6);
  }
  std::set<EdgeIndex> edges;
  for (SiteIndex s = 0; s < g.site_count(); ++s)
    for (int d = 0; d < 6; ++d) edges.insert(g.edge(s, d));
  CHECK(static_cast<int>(edges.size()) == g.edge_count());
}

TEST_CASE("dual endpoints are the two triangles sharing the primal edge") {
  const LatticeGeometry g(5);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.endpoints(e);
    const auto [t0, t1] = g.dual_endpoints(e);
    CHECK(t0 != t1);
    for (auto t : {t0, t1}) {
      const auto tri = g.triangle(t);
      CHECK(std::count(tri.begin(), tri.end(), u) == 1);
      CHECK(std::count(tri.begin(), tri.end(), v) == 1);
      const auto inc = g.dual_incident(t);
      CHECK(std::count(inc.begin(), inc.end(), e) == 1);
    }
  }
}

TEST_CASE("seam edges number 4L - 1") {
  for (int side : {3, 5, 8}) CHECK(static_cast<int>(LatticeGeometry(side).wrap_edges().size()) == 4 * side - 1);
}

TEST_CASE("boundary statistics on small shapes") {
  SUBCASE("single particle") {
    const auto c = build(7, 2, Setting::Connected, {{{3, 3}, 0}});
    CHECK(sops::count_boundary_edges(c) == 6);
    CHECK(sops::perimeter(c) == 0);
  }
  SUBCASE("domino") {
    const auto c = build(7, 2, Setting::Connected, {{{3, 3}, 0}, {{4, 3}, 1}});
    CHECK(sops::count_boundary_edges(c) == 10);
    CHECK(sops::perimeter(c) == 2);
    CHECK(sops::count_heterogeneous(c) == 1);
  }
  SUBCASE("hexagon of seven") {
    const auto c = hexagon7(9, 2, 1, 0);
    CHECK(sops::count_boundary_edges(c) == 18);
    CHECK(sops::perimeter(c) == 6);
    CHECK(traced_perimeter(c) == 6);
    CHECK(sops::count_heterogeneous(c) == 6);
    CHECK(sops::count_heterogeneous(hexagon7(9, 2)) == 0);
  }
  SUBCASE("clock distances") {
    CHECK(sops::clock_distance_sum(build(7, 4, Setting::General, {{{3, 3}, 0}, {{4, 3}, 2}})) == doctest::Approx(2.0));
    CHECK(sops::clock_distance_sum(build(7, 4, Setting::General, {{{3, 3}, 0}, {{4, 3}, 1}})) == doctest::Approx(1.0));
    CHECK(sops::clock_distance_sum(hexagon7(9, 4, 3, 3)) == 0.0);
  }
}

TEST_CASE("simple connectivity") {
  CHECK(sops::is_simply_connected(hexagon7(9, 2)));
  CHECK_FALSE(sops::is_simply_connected(build(9, 2, Setting::General, {{{3, 3}, 0}, {{5, 3}, 0}})));
  auto ring = hexagon7(9, 2, 0, 0, Setting::General);
  ring.remove(ring.geometry().index({4, 4}));
  CHECK(sops::is_connected(ring));
  CHECK_FALSE(sops::is_simply_connected(ring));
  CHECK_THROWS_AS(sops::perimeter(ring), sops::Error);
}

TEST_CASE("perimeter equals the traced boundary walk on random clusters") {
  sops::Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(25));
    const auto c = random_simply_connected(rng, 2 * n + 4, 2, n);
    REQUIRE(sops::is_simply_connected(c));
    CHECK(sops::count_boundary_edges(c) == 2 * traced_perimeter(c) + 6);
    CHECK(sops::perimeter(c) == traced_perimeter(c));
  }
  CHECK(traced_perimeter(line(12, 2, 7)) == 12);
}

TEST_CASE("cached statistics track direct recomputation under random edits") {
  sops::Rng rng(5);
  for (int q : {2, 3, 5}) {
    auto c = random_general(rng, 8, q, 15);
    for (int i = 0; i < 2000; ++i) {
      const auto parts = c.particles();
      const SiteIndex s = parts[rng.below(parts.size())];
      switch (rng.below(3)) {
        case 0:
          c.set_orientation(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(q))));
          break;
        case 1: {
          const int d = static_cast<int>(rng.below(6));
          const SiteIndex t = c.geometry().neighbor(s, d);
          if (!c.occupied(t)) c.apply(Move::spatial(s, t, d));
          break;
        }
        default:
          c.apply(Move::reorient(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(q)))));
      }
      const auto naive = naive_stats(c);
      REQUIRE(c.stats().a == naive.a);
      REQUIRE(c.stats().h == naive.h);
      REQUIRE(c.stats().d_sum == doctest::Approx(naive.d_sum).epsilon(1e-12));
      REQUIRE(c.stats() == c.recompute_stats());
    }
  }
}

TEST_CASE("heterogeneity and clock distance are invariant under a global shift") {
  sops::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 2 + static_cast<int>(rng.below(5));
    auto c = random_clustered(rng, 9, q, 20);
    const auto h = sops::count_heterogeneous(c);
    const double d = sops::clock_distance_sum(c);
    std::vector<SiteIndex> parts(c.particles().begin(), c.particles().end());
    for (SiteIndex s : parts) c.set_orientation(s, (c.orientation(s) + 1) % q);
    CHECK(sops::count_heterogeneous(c) == h);
    CHECK(sops::clock_distance_sum(c) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("local deltas of simple moves") {
  SUBCASE("reorientation keeping agreement") {
    const auto c = hexagon7(9, 3, 1, 1);
    const auto d = c.local_delta(Move::reorient(c.geometry().index({5, 5}), 1));
    CHECK(d.da == 0);
    CHECK(d.dh == 0);
  }
  SUBCASE("isolated particle translated") {
    const auto c = build(9, 2, Setting::General, {{{4, 4}, 0}});
    const auto& g = c.geometry();
    const SiteIndex s = g.index({4, 4});
    const auto d = c.local_delta(Move::spatial(s, g.neighbor(s, 2), 2));
    CHECK(d.da == 0);
  }
  SUBCASE("target must be an empty neighbour") {
    const auto c = build(9, 2, Setting::General, {{{4, 4}, 0}, {{5, 4}, 0}});
    const auto& g = c.geometry();
    CHECK_THROWS_AS((void)c.local_delta(Move::spatial(g.index({4, 4}), g.index({5, 4}), 0)), sops::Error);
    CHECK_THROWS_AS((void)c.local_delta(Move::spatial(g.index({4, 4}), g.index({7, 4}), 0)), sops::Error);
  }
}

TEST_CASE("local deltas equal recomputation exhaustively on a tiny torus") {
  // Every placement of three particles on a 3x3 torus with q = 3, every move.
  const int side = 3, q = 3;
  std::int64_t checked = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      for (int cidx = b + 1; cidx < 9; ++cidx)
        for (int colours = 0; colours < 27; ++colours) {
          Configuration c(torus(side), q, Setting::General);
          c.place(a, colours % 3);
          c.place(b, colours / 3 % 3);
          c.place(cidx, colours / 9);
          const auto before = naive_stats(c);
          for (SiteIndex s : {a, b, cidx}) {
            for (int d = 0; d < 6; ++d) {
              const SiteIndex t = c.geometry().neighbor(s, d);
              if (c.occupied(t)) continue;
              Configuration moved = c;
              const auto delta = moved.local_delta(Move::spatial(s, t, d));
              moved.apply(Move::spatial(s, t, d), delta);
              const auto after = naive_stats(moved);
              REQUIRE(delta.da == after.a - before.a);
              REQUIRE(delta.dh == after.h - before.h);
              REQUIRE(delta.dd == doctest::Approx(after.d_sum - before.d_sum).epsilon(1e-12));
              ++checked;
            }
            for (int theta = 0; theta < q; ++theta) {
              Configuration turned = c;
              const auto delta = turned.local_delta(Move::reorient(s, theta));
              turned.apply(Move::reorient(s, theta), delta);
              const auto after = naive_stats(turned);
              REQUIRE(delta.da == 0);
              REQUIRE(delta.dh == after.h - before.h);
              REQUIRE(delta.dd == doctest::Approx(after.d_sum - before.d_sum).epsilon(1e-12));
              ++checked;
            }
          }
        }
  CHECK(checked > 10000);
}
