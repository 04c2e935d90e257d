#include "sops/dynamics.hpp"

#include <bitset>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "sops/errors.hpp"

namespace sops {

void ChainParams::validate() const {
  if (q < 2 || q > 127) throw validation_error("q: must lie in [2, 127], got " + std::to_string(q));
  if (!(std::isfinite(lambda) && lambda > 0)) throw validation_error("lambda: must be finite and positive");
  if (setting == Setting::Connected && !(std::isfinite(gamma) && gamma > 0))
    throw validation_error("gamma: must be finite and positive");
}

namespace {

constexpr std::array<int, 6> kAngularPosition = [] {
  std::array<int, 6> pos{};
  for (int j = 0; j < 6; ++j) pos[static_cast<std::size_t>(kAngularOrder[static_cast<std::size_t>(j)])] = j;
  return pos;
}();

int angular(int j) { return kAngularOrder[static_cast<std::size_t>(((j % 6) + 6) % 6)]; }

std::array<SiteIndex, 8> ring_sites(const LatticeGeometry& g, SiteIndex from, int dir) {
  const int j = kAngularPosition[static_cast<std::size_t>(dir)];
  const SiteIndex to = g.neighbor(from, dir);
  return {g.neighbor(to, angular(j - 1)),   g.neighbor(to, angular(j)),       g.neighbor(to, angular(j + 1)),
          g.neighbor(from, angular(j + 1)), g.neighbor(from, angular(j + 2)), g.neighbor(from, angular(j + 3)),
          g.neighbor(from, angular(j + 4)), g.neighbor(from, angular(j - 1))};
}

// True when every member of `sites` that is occupied can be reached from
// some member of `seeds` moving through occupied members of `sites`.
bool all_reach(const Configuration& c, const std::vector<SiteIndex>& sites, const std::vector<SiteIndex>& seeds) {
  const LatticeGeometry& g = c.geometry();
  std::vector<SiteIndex> occ;
  for (SiteIndex s : sites)
    if (c.occupied(s)) occ.push_back(s);
  std::vector<char> seen(occ.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (SiteIndex s : seeds)
      if (occ[i] == s && !seen[i]) {
        seen[i] = 1;
        stack.push_back(i);
      }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t k = 0; k < occ.size(); ++k)
      if (!seen[k] && g.adjacent(occ[i], occ[k])) {
        seen[k] = 1;
        stack.push_back(k);
      }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

bool internally_connected(const Configuration& c, const std::vector<SiteIndex>& sites) {
  for (SiteIndex s : sites)
    if (c.occupied(s)) return all_reach(c, sites, {s});
  return true;
}

struct ValidityTable {
  std::array<std::bitset<256>, 6> valid;

  ValidityTable() {
    auto g = std::make_shared<const LatticeGeometry>(7);
    const SiteIndex from = g->index({3, 3});
    for (int dir = 0; dir < 6; ++dir) {
      const auto ring = ring_sites(*g, from, dir);
      const SiteIndex to = g->neighbor(from, dir);
      for (unsigned mask = 0; mask < 256; ++mask) {
        Configuration c(g, 2, Setting::Connected);
        c.place(from, 0);
        for (int b = 0; b < 8; ++b)
          if (mask & (1u << b)) c.place(ring[static_cast<std::size_t>(b)], 0);
        valid[static_cast<std::size_t>(dir)][mask] = is_valid_spatial_reference(c, from, to);
      }
    }
  }
};

const ValidityTable& validity_table() {
  static const ValidityTable table;
  return table;
}

}  // namespace

bool is_valid_spatial_reference(const Configuration& c, SiteIndex from, SiteIndex to) {
  const LatticeGeometry& g = c.geometry();
  if (!c.occupied(from)) throw invalid_argument("spatial move from an empty site");
  if (c.occupied(to) || !g.adjacent(from, to)) return false;

  std::vector<SiteIndex> around_from;  // N(from) \ {to}
  std::vector<SiteIndex> around_to;    // N(to) \ {from}
  for (SiteIndex u : g.neighbors(from))
    if (u != to) around_from.push_back(u);
  for (SiteIndex u : g.neighbors(to))
    if (u != from) around_to.push_back(u);

  int occupied_near_from = 0;
  for (SiteIndex u : around_from) occupied_near_from += c.occupied(u) ? 1 : 0;
  if (occupied_near_from >= 5) return false;

  std::vector<SiteIndex> common;
  std::vector<SiteIndex> both = around_from;
  for (SiteIndex u : around_to) {
    bool dup = false;
    for (SiteIndex v : around_from) dup = dup || v == u;
    if (dup) {
      if (c.occupied(u)) common.push_back(u);
    } else {
      both.push_back(u);
    }
  }

  if (!common.empty()) return all_reach(c, both, common);

  int occupied_near_to = 0;
  for (SiteIndex u : around_to) occupied_near_to += c.occupied(u) ? 1 : 0;
  if (occupied_near_from == 0 || occupied_near_to == 0) return false;
  return internally_connected(c, around_from) && internally_connected(c, around_to);
}

unsigned ring_mask(const Configuration& c, SiteIndex from, int dir) {
  const auto ring = ring_sites(c.geometry(), from, dir);
  unsigned mask = 0;
  for (int b = 0; b < 8; ++b)
    if (c.occupied(ring[static_cast<std::size_t>(b)])) mask |= 1u << b;
  return mask;
}

bool ring_move_valid(int dir, unsigned mask) { return validity_table().valid[static_cast<std::size_t>(dir)][mask]; }

bool is_valid_spatial(const Configuration& c, SiteIndex from, SiteIndex to) {
  if (!c.occupied(from)) throw invalid_argument("spatial move from an empty site");
  const int dir = c.geometry().direction_between(from, to);
  if (dir < 0 || c.occupied(to)) return false;
  return ring_move_valid(dir, ring_mask(c, from, dir));
}

Move propose(const Configuration& c, Rng& rng) {
  const auto parts = c.particles();
  const SiteIndex s = parts[rng.below(parts.size())];
  if (rng.below(2) == 0) {
    const int dir = static_cast<int>(rng.below(6));
    return Move::spatial(s, c.geometry().neighbor(s, dir), dir);
  }
  return Move::reorient(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(c.q()))));
}

double log_weight_ratio(const LocalDelta& d, const ChainParams& p) {
  const double energy_pairs = p.model == Model::Potts ? static_cast<double>(d.dh) : d.dd;
  if (p.setting == Setting::Connected)
    return -static_cast<double>(d.dp()) * std::log(p.lambda * p.gamma) - energy_pairs * std::log(p.gamma);
  return -(static_cast<double>(d.da) + energy_pairs) * std::log(p.lambda);
}

bool move_allowed(const Configuration& c, const Move& m) {
  if (m.kind == MoveKind::Reorient) return c.occupied(m.from) && m.theta >= 0 && m.theta < c.q();
  if (!c.occupied(m.from) || c.occupied(m.to)) return false;
  if (c.setting() == Setting::General) return c.geometry().adjacent(m.from, m.to);
  return is_valid_spatial(c, m.from, m.to);
}

double acceptance_probability(const Configuration& c, const Move& m, const ChainParams& p) {
  if (!move_allowed(c, m)) throw invalid_argument("acceptance requested for an invalid move");
  const double lr = log_weight_ratio(c.local_delta(m), p);
  return lr >= 0 ? 1.0 : std::exp(lr);
}

Chain::Chain(Configuration initial, const ChainParams& params)
    : config_(std::move(initial)), params_(params), rng_(params.seed) {
  params_.validate();
  if (params_.q != config_.q()) throw invalid_argument("chain q does not match the configuration");
  if (params_.setting != config_.setting()) throw invalid_argument("chain setting does not match the configuration");
  if (config_.n() == 0) throw invalid_argument("chain needs at least one particle");
  if (params_.setting == Setting::Connected) {
    if (config_.geometry().side() < 5) throw invalid_argument("connected chain needs lattice side at least 5");
    if (!is_simply_connected(config_)) throw invalid_argument("initial configuration is not simply connected");
  }
  log_lambda_ = std::log(params_.lambda);
  log_gamma_ = std::log(params_.gamma);
  log_lambda_gamma_ = log_lambda_ + log_gamma_;
}

bool Chain::accept(const LocalDelta& d) {
  const double pairs = params_.model == Model::Potts ? static_cast<double>(d.dh) : d.dd;
  double lr;
  if (params_.setting == Setting::Connected)
    lr = -static_cast<double>(d.dp()) * log_lambda_gamma_ - pairs * log_gamma_;
  else
    lr = -(static_cast<double>(d.da) + pairs) * log_lambda_;
  if (lr >= 0) return true;
  return std::log(rng_.open01()) < lr;
}

bool Chain::step() {
  ++steps_;
  const Move m = propose(config_, rng_);
  if (m.kind == MoveKind::Spatial) {
    if (config_.occupied(m.to)) return false;
    if (params_.setting == Setting::Connected && !ring_move_valid(m.dir, ring_mask(config_, m.from, m.dir)))
      return false;
  } else if (config_.orientation(m.from) == m.theta) {
    return false;
  }
  const LocalDelta d = config_.local_delta(m);
  if (!accept(d)) return false;
  config_.apply(m, d);
  ++accepted_;
  return true;
}

void Chain::run(std::uint64_t steps, std::uint64_t interval, const Observer& observer) {
  if (observer && steps_ == 0) observer(steps_, config_);
  const std::uint64_t end = steps_ + steps;
  while (steps_ < end) {
    std::uint64_t next = end;
    if (interval > 0) {
      const std::uint64_t boundary = (steps_ / interval + 1) * interval;
      if (boundary < next) next = boundary;
    }
    while (steps_ < next) step();
    if (observer && (steps_ == end || (interval > 0 && steps_ % interval == 0))) observer(steps_, config_);
  }
}

}  // namespace sops
