#include "sops/exact.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sops/errors.hpp"
#include "sops/polymer.hpp"

namespace sops {

namespace {

std::string key_of(std::span<const std::int8_t> orientations) {
  return {reinterpret_cast<const char*>(orientations.data()), orientations.size()};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Configuration build(const std::shared_ptr<const LatticeGeometry>& g, const ChainParams& p,
                    const std::vector<std::int8_t>& orientations) {
  Configuration c(g, p.q, p.setting);
  for (std::size_t s = 0; s < orientations.size(); ++s)
    if (orientations[s] != kEmpty) c.place(static_cast<SiteIndex>(s), orientations[s]);
  return c;
}

}  // namespace

std::int64_t ExactStationary::find(const std::vector<std::int8_t>& orientations) const {
  const auto it = index.find(key_of(orientations));
  return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
}

ExactStationary exact_stationary(const ChainParams& params, int side, int n, std::uint64_t state_budget) {
  params.validate();
  auto g = std::make_shared<const LatticeGeometry>(side);
  const int sites = g->site_count();
  if (n < 1 || n > sites) throw invalid_argument("particle count must lie in [1, side^2]");
  if (params.setting == Setting::Connected && side < 5) throw invalid_argument("connected oracle needs side at least 5");
  const double subsets = binomial(sites, n);
  const double assignments = std::pow(static_cast<double>(params.q), n);
  if (subsets > 5e7) throw budget_error("too many occupancy subsets to enumerate");
  if (params.setting == Setting::General && subsets * assignments > static_cast<double>(state_budget))
    throw budget_error("state space exceeds the enumeration budget");

  ExactStationary ex;
  ex.side = side;
  ex.n = n;
  ex.params = params;

  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<double> log_w;
  for (;;) {
    std::vector<std::int8_t> occ(static_cast<std::size_t>(sites), kEmpty);
    for (int s : pick) occ[static_cast<std::size_t>(s)] = 0;
    bool admissible = true;
    if (params.setting == Setting::Connected) admissible = is_simply_connected(build(g, params, occ));
    if (admissible) {
      std::vector<int> digits(static_cast<std::size_t>(n), 0);
      for (;;) {
        for (int i = 0; i < n; ++i)
          occ[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] =
              static_cast<std::int8_t>(digits[static_cast<std::size_t>(i)]);
        if (ex.states.size() >= state_budget) throw budget_error("state space exceeds the enumeration budget");
        const Configuration c = build(g, params, occ);
        log_w.push_back(log_configuration_weight(c.stats(), params.setting, params.model, params.lambda, params.gamma));
        ex.index.emplace(key_of(occ), static_cast<std::uint32_t>(ex.states.size()));
        ex.states.push_back(occ);
        int i = 0;
        while (i < n && ++digits[static_cast<std::size_t>(i)] == params.q) digits[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == sites - n + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  const double top = *std::max_element(log_w.begin(), log_w.end());
  double z = 0.0;
  for (double lw : log_w) z += std::exp(lw - top);
  ex.pi.resize(log_w.size());
  for (std::size_t i = 0; i < log_w.size(); ++i) ex.pi[i] = std::exp(log_w[i] - top) / z;

  const double spatial_p = 1.0 / (12.0 * n);
  const double reorient_p = 1.0 / (2.0 * params.q * n);
  ex.transitions.resize(ex.states.size());
  for (std::size_t i = 0; i < ex.states.size(); ++i) {
    const Configuration c = build(g, params, ex.states[i]);
    std::vector<std::pair<std::uint32_t, double>> row;
    auto add = [&](const Move& m, double proposal) {
      if (!move_allowed(c, m)) return;
      const double acc = acceptance_probability(c, m, params);
      Configuration next = c;
      next.apply(m);
      const auto it = ex.index.find(key_of(next.orientations()));
      if (it == ex.index.end()) throw Error(ErrorKind::Runtime, "move leaves the enumerated state space");
      row.emplace_back(it->second, proposal * acc);
    };
    for (SiteIndex s : c.particles()) {
      for (int d = 0; d < 6; ++d) add(Move::spatial(s, g->neighbor(s, d), d), spatial_p);
      for (int t = 0; t < params.q; ++t)
        if (t != c.orientation(s)) add(Move::reorient(s, t), reorient_p);
    }
    std::sort(row.begin(), row.end());
    std::vector<std::pair<std::uint32_t, double>> merged;
    double leave = 0.0;
    for (const auto& [j, pr] : row) {
      leave += pr;
      if (!merged.empty() && merged.back().first == j)
        merged.back().second += pr;
      else
        merged.emplace_back(j, pr);
    }
    merged.emplace_back(static_cast<std::uint32_t>(i), 1.0 - leave);
    std::sort(merged.begin(), merged.end());
    ex.transitions[i] = std::move(merged);
  }

  std::vector<double> flow(ex.states.size(), 0.0);
  for (std::size_t i = 0; i < ex.states.size(); ++i) {
    double sum = 0.0;
    for (const auto& [j, pr] : ex.transitions[i]) {
      flow[j] += ex.pi[i] * pr;
      sum += pr;
      if (j == i) continue;
      const auto& back = ex.transitions[j];
      const auto it = std::lower_bound(back.begin(), back.end(), std::pair<std::uint32_t, double>{static_cast<std::uint32_t>(i), -1.0});
      const double reverse = it != back.end() && it->first == i ? it->second : 0.0;
      const double f = ex.pi[i] * pr;
      const double b = ex.pi[j] * reverse;
      const double diff = std::abs(f - b);
      ex.detailed_balance_max_abs = std::max(ex.detailed_balance_max_abs, diff);
      ex.detailed_balance_max_rel = std::max(ex.detailed_balance_max_rel, diff / std::max(f, b));
    }
    ex.row_sum_max_error = std::max(ex.row_sum_max_error, std::abs(sum - 1.0));
  }
  for (std::size_t i = 0; i < flow.size(); ++i) ex.stationarity_l1 += std::abs(flow[i] - ex.pi[i]);
  return ex;
}

EmpiricalComparison compare_empirical(const ExactStationary& exact, std::uint64_t steps, std::uint64_t burn_in,
                                      std::uint64_t seed) {
  if (exact.states.empty()) throw invalid_argument("empty oracle");
  if (steps == 0) throw invalid_argument("comparison needs at least one step");
  ChainParams p = exact.params;
  p.seed = seed;
  auto g = std::make_shared<const LatticeGeometry>(exact.side);
  Chain chain(build(g, p, exact.states.front()), p);
  chain.run(burn_in);
  std::vector<std::uint64_t> visits(exact.states.size(), 0);
  std::uint32_t current = exact.index.at(key_of(chain.configuration().orientations()));
  for (std::uint64_t t = 0; t < steps; ++t) {
    if (chain.step()) current = exact.index.at(key_of(chain.configuration().orientations()));
    ++visits[current];
  }
  EmpiricalComparison r;
  r.steps = steps;
  r.burn_in = burn_in;
  r.empirical.resize(visits.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < visits.size(); ++i) {
    r.empirical[i] = static_cast<double>(visits[i]) / static_cast<double>(steps);
    tv += std::abs(r.empirical[i] - exact.pi[i]);
  }
  r.total_variation = tv / 2.0;
  return r;
}

}  // namespace sops
