#include "sops/configuration.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sops/errors.hpp"

namespace sops {

OrientationMetric::OrientationMetric(int q) : q_(q) {
  if (q < 2 || q > 127) throw invalid_argument("q must lie in [2, 127], got " + std::to_string(q));
  distance_.resize(static_cast<std::size_t>(classes()));
  for (int k = 0; k < classes(); ++k) distance_[static_cast<std::size_t>(k)] = 1.0 - std::cos(2.0 * std::numbers::pi * k / q);
  distance_[0] = 0.0;
}

double OrientationMetric::dsum_of(std::span<const std::int64_t> hist) const {
  double s = 0.0;
  for (std::size_t k = 1; k < hist.size(); ++k) s += static_cast<double>(hist[k]) * distance_[k];
  return s;
}

Configuration::Configuration(std::shared_ptr<const LatticeGeometry> geometry, int q, Setting setting)
    : geometry_(std::move(geometry)), metric_(q), setting_(setting) {
  if (!geometry_) throw invalid_argument("configuration needs a lattice geometry");
  theta_.assign(static_cast<std::size_t>(geometry_->site_count()), kEmpty);
  slot_.assign(theta_.size(), -1);
  stats_.diff_hist.assign(static_cast<std::size_t>(metric_.classes()), 0);
}

std::int64_t Configuration::occupied_neighbor_count(SiteIndex s) const {
  std::int64_t k = 0;
  for (SiteIndex u : geometry_->neighbors(s)) k += occupied(u) ? 1 : 0;
  return k;
}

void Configuration::add_pairs(SiteIndex s, int theta, int sign, SiteIndex skip) {
  for (SiteIndex u : geometry_->neighbors(s)) {
    if (u == skip || !occupied(u)) continue;
    const int k = metric_.diff_class(theta, orientation(u));
    stats_.diff_hist[static_cast<std::size_t>(k)] += sign;
    if (k != 0) stats_.h += sign;
  }
}

void Configuration::place(SiteIndex s, int theta) {
  if (s < 0 || s >= geometry_->site_count()) throw invalid_argument("site index out of range");
  if (occupied(s)) throw invalid_argument("site " + std::to_string(s) + " is already occupied");
  if (theta < 0 || theta >= q()) throw invalid_argument("orientation out of range");
  const std::int64_t k = occupied_neighbor_count(s);
  stats_.a += (6 - k) - k;
  add_pairs(s, theta, +1, -1);
  theta_[static_cast<std::size_t>(s)] = static_cast<std::int8_t>(theta);
  slot_[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(particles_.size());
  particles_.push_back(s);
  stats_.d_sum = metric_.dsum_of(stats_.diff_hist);
}

void Configuration::remove(SiteIndex s) {
  if (!occupied(s)) throw invalid_argument("site " + std::to_string(s) + " is empty");
  const int theta = orientation(s);
  theta_[static_cast<std::size_t>(s)] = kEmpty;
  const std::int64_t k = occupied_neighbor_count(s);
  stats_.a -= (6 - k) - k;
  add_pairs(s, theta, -1, -1);
  const std::int32_t i = slot_[static_cast<std::size_t>(s)];
  const SiteIndex last = particles_.back();
  particles_[static_cast<std::size_t>(i)] = last;
  slot_[static_cast<std::size_t>(last)] = i;
  particles_.pop_back();
  slot_[static_cast<std::size_t>(s)] = -1;
  stats_.d_sum = metric_.dsum_of(stats_.diff_hist);
}

void Configuration::set_orientation(SiteIndex s, int theta) {
  if (!occupied(s)) throw invalid_argument("site " + std::to_string(s) + " is empty");
  if (theta < 0 || theta >= q()) throw invalid_argument("orientation out of range");
  apply(Move::reorient(s, theta));
}

BoundaryStats Configuration::recompute_stats() const {
  BoundaryStats out;
  out.diff_hist.assign(static_cast<std::size_t>(metric_.classes()), 0);
  const LatticeGeometry& g = *geometry_;
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    for (int f = 0; f < 3; ++f) {
      const SiteIndex t = g.neighbor(s, f);
      const bool os = occupied(s);
      const bool ot = occupied(t);
      if (os != ot) {
        ++out.a;
      } else if (os) {
        const int k = metric_.diff_class(orientation(s), orientation(t));
        ++out.diff_hist[static_cast<std::size_t>(k)];
        if (k != 0) ++out.h;
      }
    }
  }
  out.d_sum = metric_.dsum_of(out.diff_hist);
  return out;
}

LocalDelta Configuration::local_delta(const Move& m) const {
  const LatticeGeometry& g = *geometry_;
  LocalDelta d;
  auto record = [&](int cls, int sign) {
    d.change_class[static_cast<std::size_t>(d.changes)] = static_cast<std::uint8_t>(cls);
    d.change_sign[static_cast<std::size_t>(d.changes)] = static_cast<std::int8_t>(sign);
    ++d.changes;
    if (cls != 0) d.dh += sign;
    d.dd += sign * metric_.distance_of_class(cls);
  };

  if (m.kind == MoveKind::Reorient) {
    if (!occupied(m.from)) throw invalid_argument("reorientation of an empty site");
    if (m.theta < 0 || m.theta >= q()) throw invalid_argument("orientation out of range");
    const int old = orientation(m.from);
    if (old == m.theta) return d;
    for (SiteIndex u : g.neighbors(m.from)) {
      if (!occupied(u)) continue;
      const int tu = orientation(u);
      const int before = metric_.diff_class(old, tu);
      const int after = metric_.diff_class(m.theta, tu);
      if (before == after) continue;
      record(before, -1);
      record(after, +1);
    }
    return d;
  }

  if (!occupied(m.from)) throw invalid_argument("spatial move from an empty site");
  if (occupied(m.to)) throw invalid_argument("spatial move into an occupied site");
  if (g.neighbor(m.from, m.dir) != m.to) throw invalid_argument("spatial move target is not adjacent");
  const int theta = orientation(m.from);
  std::int64_t k_from = 0;
  std::int64_t k_to = 0;
  for (SiteIndex u : g.neighbors(m.from)) {
    if (!occupied(u)) continue;
    ++k_from;
    record(metric_.diff_class(theta, orientation(u)), -1);
  }
  for (SiteIndex u : g.neighbors(m.to)) {
    if (u == m.from || !occupied(u)) continue;
    ++k_to;
    record(metric_.diff_class(theta, orientation(u)), +1);
  }
  d.da = 2 * (k_from - k_to);
  return d;
}

void Configuration::apply(const Move& m, const LocalDelta& delta) {
  if (m.kind == MoveKind::Reorient) {
    theta_[static_cast<std::size_t>(m.from)] = static_cast<std::int8_t>(m.theta);
  } else {
    theta_[static_cast<std::size_t>(m.to)] = theta_[static_cast<std::size_t>(m.from)];
    theta_[static_cast<std::size_t>(m.from)] = kEmpty;
    const std::int32_t i = slot_[static_cast<std::size_t>(m.from)];
    particles_[static_cast<std::size_t>(i)] = m.to;
    slot_[static_cast<std::size_t>(m.to)] = i;
    slot_[static_cast<std::size_t>(m.from)] = -1;
  }
  stats_.a += delta.da;
  stats_.h += delta.dh;
  if (delta.changes > 0) {
    for (int i = 0; i < delta.changes; ++i)
      stats_.diff_hist[delta.change_class[static_cast<std::size_t>(i)]] += delta.change_sign[static_cast<std::size_t>(i)];
    stats_.d_sum = metric_.dsum_of(stats_.diff_hist);
  }
}

std::int64_t count_boundary_edges(const Configuration& c) { return c.recompute_stats().a; }
std::int64_t count_heterogeneous(const Configuration& c) { return c.recompute_stats().h; }
double clock_distance_sum(const Configuration& c) { return c.recompute_stats().d_sum; }

namespace {
// Number of sites reached from `start` moving only through sites with
// occupied(s) == want.
int flood(const Configuration& c, SiteIndex start, bool want) {
  const LatticeGeometry& g = c.geometry();
  std::vector<char> seen(static_cast<std::size_t>(g.site_count()), 0);
  std::vector<SiteIndex> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  int count = 0;
  while (!stack.empty()) {
    const SiteIndex s = stack.back();
    stack.pop_back();
    ++count;
    for (SiteIndex u : g.neighbors(s)) {
      if (seen[static_cast<std::size_t>(u)] || c.occupied(u) != want) continue;
      seen[static_cast<std::size_t>(u)] = 1;
      stack.push_back(u);
    }
  }
  return count;
}
}  // namespace

bool is_connected(const Configuration& c) {
  if (c.n() == 0) return true;
  return flood(c, c.particles()[0], true) == c.n();
}

bool is_simply_connected(const Configuration& c) {
  if (!is_connected(c)) return false;
  const int empty = c.geometry().site_count() - c.n();
  if (empty == 0) return true;
  for (SiteIndex s = 0; s < c.geometry().site_count(); ++s)
    if (!c.occupied(s)) return flood(c, s, false) == empty;
  return true;
}

std::int64_t perimeter(const Configuration& c) {
  if (c.n() == 0) throw domain_error("perimeter of an empty configuration is undefined");
  if (!is_simply_connected(c)) throw domain_error("perimeter is undefined: configuration is not simply connected");
  return (c.stats().a - 6) / 2;
}

}  // namespace sops
