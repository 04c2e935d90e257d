#include <doctest.h>

#include "sops/bridge.hpp"
#include "sops/observables.hpp"
#include "sops/theory.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Configuration spiral(int side, int q, int n, int theta, SiteIndex centre = -1) {
  Configuration c(torus(side), q, Setting::General);
  if (centre < 0) centre = c.geometry().index({side / 2, side / 2});
  for (SiteIndex s : sops::spiral_sites(c.geometry(), centre, n)) c.place(s, theta);
  return c;
}

bool region_is(const sops::RegionReport& r, const Configuration& c) {
  std::vector<SiteIndex> parts(c.particles().begin(), c.particles().end());
  std::sort(parts.begin(), parts.end());
  return r.region == parts;
}

}  // namespace

TEST_CASE("complex contours of a hexagon are its occupancy boundary") {
  const auto c = hexagon7(12, 2, 0, 0, Setting::General);
  const auto parts = sops::complex_contours(c);
  REQUIRE(parts.contours.size() == 1);
  CHECK(parts.contours[0].size() == 18);
  const auto two = hexagon7(12, 2, 1, 0, Setting::General);
  // The centre/ring contour lives on the six triangles at the centre, away from the outer one.
  const auto split = sops::complex_contours(two);
  REQUIRE(split.contours.size() == 2);
  std::vector<std::size_t> sizes{split.contours[0].size(), split.contours[1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{6, 18});
}

TEST_CASE("cluster on the seam is bridged without bridges") {
  Configuration c(torus(12), 2, Setting::General);
  const auto& g = c.geometry();
  for (SiteIndex s : sops::spiral_sites(g, g.index({0, 0}), 7)) c.place(s, 1);
  const auto bs = sops::construct_bridge_system(c, 0.2);
  CHECK(bs.bridges.empty());
  CHECK(bs.bridged.size() == 18);
  const auto verdict = check_bridge_system(c, bs);
  CHECK_MESSAGE(verdict.ok(), verdict.detail);
}

TEST_CASE("single particle at the centre gets bridged") {
  const auto c = build(12, 2, Setting::General, {{{6, 6}, 1}});
  const auto bs = sops::construct_bridge_system(c, 0.005);
  const auto verdict = check_bridge_system(c, bs);
  CHECK_MESSAGE(verdict.ok(), verdict.detail);
  CHECK(bs.bridged.size() == 6);
  CHECK_FALSE(bs.bridges.empty());
  CHECK(bs.theta[static_cast<std::size_t>(c.geometry().index({6, 6}))] == 1);
}

TEST_CASE("packed monochromatic spiral is its own aggregation region at small delta") {
  for (int n : {19, 37, 61}) {
    const auto c = spiral(30, 2, n, 0);
    const double delta = 0.5 * static_cast<double>(n) / c.geometry().site_count();
    const auto r = sops::aggregation_region(c, delta);
    CHECK(region_is(r, c));
    CHECK(r.empty_inside == 0);
    CHECK(r.particles_outside == 0);
    CHECK(r.dominant_count == n);
    CHECK(r.boundary_length == static_cast<std::int64_t>(sops::bd_min(n, c.geometry().site_count()).value));
    CHECK(sops::is_aggregated(c, r, 1.0, delta));
    CHECK(sops::is_aggregated_aligned(c, r, 1.0, delta));
  }
}

TEST_CASE("large delta lets an empty region satisfy the clauses vacuously") {
  // With delta above the density no bridging is needed, so R is empty and
  // only the outside and boundary clauses remain, both of which hold.
  const auto c = spiral(40, 2, 160, 0);
  const auto r = sops::aggregation_region(c, 0.2);
  CHECK(r.region.empty());
  CHECK(sops::is_aggregated_aligned(c, r, 3.0, 0.2));
  // The tolerance derived for the aggregation statement forces bridging.
  const double tight = sops::aggregation_bridge_delta(0.1, 3.0, 0.2);
  CHECK(tight < 0.1);
  const auto tight_region = sops::aggregation_region(c, tight);
  CHECK(region_is(tight_region, c));
  CHECK(sops::is_aggregated_aligned(c, tight_region, 3.0, 0.2));
}

TEST_CASE("scattered isolated particles are not aggregated") {
  Configuration c(torus(40), 2, Setting::General);
  for (int y = 0; y < 40; y += 4)
    for (int x = 0; x < 40; x += 3) c.place(c.geometry().index({x, y}), (x + y) % 2);
  const auto r = sops::aggregation_region(c, 0.01);
  CHECK_FALSE(sops::is_aggregated(c, r, 2.0, 0.01));
  CHECK_FALSE(sops::is_aggregated_aligned(c, r, 2.0, 0.01));
  const auto verdict = check_bridge_system(c, sops::construct_bridge_system(c, 0.01));
  CHECK_MESSAGE(verdict.ok(), verdict.detail);
}

TEST_CASE("aggregation clause arithmetic") {
  const auto c = spiral(30, 2, 19, 0);
  sops::RegionReport r;
  r.region.assign(c.particles().begin(), c.particles().end());
  r.boundary_length = 2 * sops::p_min_exact(19) + 6;
  r.dominant_count = 19;
  CHECK(sops::is_aggregated(c, r, 1.0, 0.0));
  r.empty_inside = 1;
  CHECK_FALSE(sops::is_aggregated(c, r, 1.0, 0.0));
  CHECK(sops::is_aggregated(c, r, 1.0, 0.1));
  r.empty_inside = 0;
  r.boundary_length += 1;
  CHECK_FALSE(sops::is_aggregated(c, r, 1.0, 0.1));
  CHECK(sops::is_aggregated(c, r, 1.1, 0.1));
}

TEST_CASE("random configurations yield valid bridge systems") {
  sops::Rng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const int side = 8 + static_cast<int>(rng.below(10));
    const int q = 2 + static_cast<int>(rng.below(3));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(side * side / 3 - 1)));
    const auto c = trial % 2 ? random_general(rng, side, q, n) : random_clustered(rng, side, q, n);
    for (double delta : {0.1, 0.2, 0.3}) {
      const auto bs = sops::construct_bridge_system(c, delta);
      const auto verdict = check_bridge_system(c, bs);
      INFO("trial " << trial << " side " << side << " n " << n << " delta " << delta);
      CHECK_MESSAGE(verdict.ok(), verdict.detail);
    }
  }
}
