#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sops {

using SiteIndex = std::int32_t;
using EdgeIndex = std::int32_t;
using DualVertex = std::int32_t;

struct Site {
  int x = 0;
  int y = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct Offset {
  int dx = 0;
  int dy = 0;
};

// Direction k and (k + 3) % 6 are opposite. Directions 0..2 are the
// forward directions used to index edges.
inline constexpr std::array<Offset, 6> kDirections{{{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}};

// Directions listed counter-clockwise starting from (1,0) in the planar
// embedding e1 = (1,0), e2 = (-1/2, sqrt(3)/2).
inline constexpr std::array<int, 6> kAngularOrder{0, 2, 1, 3, 5, 4};

inline constexpr int opposite(int dir) { return (dir + 3) % 6; }

// Periodic L x L triangular lattice. Site (x, y) has index y * L + x.
// Edge u -> u + kDirections[f] (f < 3) has index 3 * u + f; that orientation
// is the canonical one. Dual vertices are the 2N triangles:
//   2 * s     : {(x,y), (x+1,y), (x+1,y+1)}
//   2 * s + 1 : {(x,y), (x,y+1), (x+1,y+1)}
// and the dual edge crossing primal edge e carries the same index e.
class LatticeGeometry {
 public:
  explicit LatticeGeometry(int side);

  int side() const { return side_; }
  int site_count() const { return side_ * side_; }
  int edge_count() const { return 3 * site_count(); }
  int dual_vertex_count() const { return 2 * site_count(); }

  SiteIndex index(Site s) const;
  Site site(SiteIndex i) const { return {i % side_, i / side_}; }

  SiteIndex neighbor(SiteIndex s, int dir) const { return neighbors_[static_cast<std::size_t>(s) * 6 + dir]; }
  std::span<const SiteIndex, 6> neighbors(SiteIndex s) const {
    return std::span<const SiteIndex, 6>(neighbors_.data() + static_cast<std::size_t>(s) * 6, 6);
  }
  // Direction from a to b, or -1 when they are not adjacent.
  int direction_between(SiteIndex a, SiteIndex b) const;
  bool adjacent(SiteIndex a, SiteIndex b) const { return direction_between(a, b) >= 0; }

  EdgeIndex edge(SiteIndex s, int dir) const;
  EdgeIndex edge_between(SiteIndex a, SiteIndex b) const;
  // Endpoints in canonical order (tail, head).
  std::pair<SiteIndex, SiteIndex> endpoints(EdgeIndex e) const;
  // Edges whose unreduced forward offset leaves the fundamental domain.
  bool is_wrap(EdgeIndex e) const;
  std::vector<EdgeIndex> wrap_edges() const;

  std::pair<DualVertex, DualVertex> dual_endpoints(EdgeIndex e) const;
  std::array<EdgeIndex, 3> dual_incident(DualVertex t) const;
  std::array<SiteIndex, 3> triangle(DualVertex t) const;

 private:
  int side_;
  std::vector<SiteIndex> neighbors_;
};

}  // namespace sops
