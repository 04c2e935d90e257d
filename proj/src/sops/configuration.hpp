#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sops/lattice.hpp"
#include "sops/types.hpp"

namespace sops {

inline constexpr std::int8_t kEmpty = -1;

struct BoundaryStats {
  std::int64_t a = 0;  // occupied-empty edges
  std::int64_t h = 0;  // occupied-occupied edges with differing orientation
  double d_sum = 0.0;  // sum of 1 - cos(2 pi dtheta / q) over occupied-occupied edges
  // diff_hist[k]: occupied-occupied edges whose orientation difference class is k,
  // where the class of a difference d is min(d mod q, q - d mod q).
  std::vector<std::int64_t> diff_hist;
  friend bool operator==(const BoundaryStats&, const BoundaryStats&) = default;
};

enum class MoveKind : std::uint8_t { Spatial, Reorient };

struct Move {
  MoveKind kind = MoveKind::Reorient;
  SiteIndex from = 0;  // Spatial: origin; Reorient: the site
  SiteIndex to = 0;    // Spatial: target
  int dir = 0;         // Spatial: direction index from origin to target
  int theta = 0;       // Reorient: new orientation

  static Move spatial(SiteIndex from, SiteIndex to, int dir) { return {MoveKind::Spatial, from, to, dir, 0}; }
  static Move reorient(SiteIndex site, int theta) { return {MoveKind::Reorient, site, site, 0, theta}; }
};

// Exact change of the boundary statistics under a move. Pair-class changes
// are kept explicitly so the histogram update is exact.
struct LocalDelta {
  std::int64_t da = 0;
  std::int64_t dh = 0;
  double dd = 0.0;
  int changes = 0;
  std::array<std::uint8_t, 12> change_class{};
  std::array<std::int8_t, 12> change_sign{};

  std::int64_t dp() const { return da / 2; }
};

// Difference class table for a fixed q: class of (t1 - t2) and its clock distance.
class OrientationMetric {
 public:
  explicit OrientationMetric(int q);
  int q() const { return q_; }
  int classes() const { return q_ / 2 + 1; }
  int diff_class(int t1, int t2) const {
    int d = t1 - t2;
    if (d < 0) d = -d;
    return d <= q_ - d ? d : q_ - d;
  }
  double distance_of_class(int k) const { return distance_[static_cast<std::size_t>(k)]; }
  double distance(int t1, int t2) const { return distance_of_class(diff_class(t1, t2)); }
  double dsum_of(std::span<const std::int64_t> hist) const;

 private:
  int q_;
  std::vector<double> distance_;
};

class Configuration {
 public:
  Configuration(std::shared_ptr<const LatticeGeometry> geometry, int q, Setting setting);

  const LatticeGeometry& geometry() const { return *geometry_; }
  std::shared_ptr<const LatticeGeometry> geometry_ptr() const { return geometry_; }
  const OrientationMetric& metric() const { return metric_; }
  int q() const { return metric_.q(); }
  Setting setting() const { return setting_; }
  int n() const { return static_cast<int>(particles_.size()); }

  int orientation(SiteIndex s) const { return theta_[static_cast<std::size_t>(s)]; }
  bool occupied(SiteIndex s) const { return theta_[static_cast<std::size_t>(s)] != kEmpty; }
  std::span<const SiteIndex> particles() const { return particles_; }
  std::span<const std::int8_t> orientations() const { return theta_; }

  void place(SiteIndex s, int theta);
  void remove(SiteIndex s);
  void set_orientation(SiteIndex s, int theta);

  // Cached statistics, maintained incrementally.
  const BoundaryStats& stats() const { return stats_; }
  // Full recomputation from scratch.
  BoundaryStats recompute_stats() const;

  LocalDelta local_delta(const Move& m) const;
  // Applies a move whose delta has already been computed.
  void apply(const Move& m, const LocalDelta& delta);
  void apply(const Move& m) { apply(m, local_delta(m)); }

  std::int64_t occupied_neighbor_count(SiteIndex s) const;

 private:
  void add_pairs(SiteIndex s, int theta, int sign, SiteIndex skip);

  std::shared_ptr<const LatticeGeometry> geometry_;
  OrientationMetric metric_;
  Setting setting_;
  std::vector<std::int8_t> theta_;
  std::vector<SiteIndex> particles_;
  std::vector<std::int32_t> slot_;
  BoundaryStats stats_;
};

std::int64_t count_boundary_edges(const Configuration& c);
std::int64_t count_heterogeneous(const Configuration& c);
double clock_distance_sum(const Configuration& c);
bool is_connected(const Configuration& c);
bool is_simply_connected(const Configuration& c);
// (a - 6) / 2 for a simply connected configuration; throws otherwise.
std::int64_t perimeter(const Configuration& c);

}  // namespace sops
