#include <doctest.h>

#include <cmath>

#include "sops/errors.hpp"
#include "sops/exact.hpp"
#include "support.hpp"

using namespace testing;
using sops::ChainParams;
using sops::Model;

namespace {

ChainParams general(int q, double lambda, Model model = Model::Potts) {
  ChainParams p;
  p.setting = Setting::General;
  p.model = model;
  p.q = q;
  p.lambda = lambda;
  return p;
}

}  // namespace

TEST_CASE("one particle on the 3x3 torus is uniform") {
  const auto ex = sops::exact_stationary(general(2, 2.0), 3, 1);
  REQUIRE(ex.states.size() == 18);
  for (double p : ex.pi) CHECK(p == doctest::Approx(1.0 / 18.0).epsilon(1e-14));
}

TEST_CASE("two particles on the 3x3 torus match hand normalization") {
  const double lambda = 2.0;
  const auto ex = sops::exact_stationary(general(2, lambda), 3, 2);
  REQUIRE(ex.states.size() == 144);
  // 27 adjacent pairs (a = 10, h in {0, 1}) and 9 non-adjacent pairs (a = 12, h = 0).
  const double z = 27 * (2 * std::pow(lambda, -10) + 2 * std::pow(lambda, -11)) + 36 * std::pow(lambda, -12);
  const LatticeGeometry g(3);
  for (std::size_t i = 0; i < ex.states.size(); ++i) {
    std::vector<SiteIndex> occ;
    for (SiteIndex s = 0; s < 9; ++s)
      if (ex.states[i][static_cast<std::size_t>(s)] >= 0) occ.push_back(s);
    REQUIRE(occ.size() == 2);
    const bool adjacent = g.adjacent(occ[0], occ[1]);
    const bool differ = ex.states[i][static_cast<std::size_t>(occ[0])] != ex.states[i][static_cast<std::size_t>(occ[1])];
    const int exponent = adjacent ? (differ ? 11 : 10) : 12;
    CHECK(ex.pi[i] == doctest::Approx(std::pow(lambda, -exponent) / z).epsilon(1e-13));
  }
  CHECK(ex.stationarity_l1 < 1e-12);
  CHECK(ex.detailed_balance_max_rel < 1e-12);
  CHECK(ex.row_sum_max_error < 1e-12);
}

TEST_CASE("oracle instances are stationary and reversible") {
  for (Model model : {Model::Potts, Model::Clock}) {
    ChainParams p;
    p.setting = Setting::Connected;
    p.model = model;
    p.q = 3;
    p.lambda = 2.0;
    p.gamma = 1.5;
    const auto ex = sops::exact_stationary(p, 7, 3);
    CHECK(ex.states.size() == 11 * 49 * 27);
    CHECK(ex.stationarity_l1 < 1e-12);
    CHECK(ex.detailed_balance_max_rel < 1e-12);
    // Edge-by-edge: every transition has its reverse.
    for (std::size_t i = 0; i < ex.transitions.size(); ++i)
      for (const auto& [j, pij] : ex.transitions[i]) {
        if (j == i || pij == 0) continue;
        double pji = 0;
        for (const auto& [k, v] : ex.transitions[j])
          if (k == i) pji = v;
        REQUIRE(pji > 0);
        REQUIRE(ex.pi[i] * pij == doctest::Approx(ex.pi[j] * pji).epsilon(1e-12));
      }
  }
  const auto clock = sops::exact_stationary(general(4, 1.5, Model::Clock), 3, 2);
  CHECK(clock.detailed_balance_max_rel < 1e-12);
}

TEST_CASE("state budget is enforced") {
  CHECK_THROWS_AS((void)sops::exact_stationary(general(4, 1.0), 6, 5, 1000), sops::Error);
}

TEST_CASE("short empirical comparison is close") {
  const auto ex = sops::exact_stationary(general(2, 2.0), 3, 2);
  const auto cmp = sops::compare_empirical(ex, 2'000'000, 10'000, 3);
  CHECK(cmp.total_variation < 0.03);
  double sum = 0;
  for (double p : cmp.empirical) sum += p;
  CHECK(sum == doctest::Approx(1.0));
}
