#include "sops/lattice.hpp"

#include <string>

#include "sops/errors.hpp"

namespace sops {

namespace {
int wrap(int v, int n) {
  int r = v % n;
  return r < 0 ? r + n : r;
}
}  // namespace

LatticeGeometry::LatticeGeometry(int side) : side_(side) {
  if (side < 3) throw invalid_argument("lattice side must be at least 3, got " + std::to_string(side));
  neighbors_.resize(static_cast<std::size_t>(site_count()) * 6);
  for (SiteIndex s = 0; s < site_count(); ++s) {
    const Site p = site(s);
    for (int d = 0; d < 6; ++d) {
      neighbors_[static_cast<std::size_t>(s) * 6 + d] = index({p.x + kDirections[d].dx, p.y + kDirections[d].dy});
    }
  }
}

SiteIndex LatticeGeometry::index(Site s) const { return wrap(s.y, side_) * side_ + wrap(s.x, side_); }

int LatticeGeometry::direction_between(SiteIndex a, SiteIndex b) const {
  for (int d = 0; d < 6; ++d)
    if (neighbor(a, d) == b) return d;
  return -1;
}

EdgeIndex LatticeGeometry::edge(SiteIndex s, int dir) const {
  if (dir < 3) return s * 3 + dir;
  return neighbor(s, dir) * 3 + (dir - 3);
}

EdgeIndex LatticeGeometry::edge_between(SiteIndex a, SiteIndex b) const {
  const int d = direction_between(a, b);
  if (d < 0) throw invalid_argument("sites are not adjacent");
  return edge(a, d);
}

std::pair<SiteIndex, SiteIndex> LatticeGeometry::endpoints(EdgeIndex e) const {
  const SiteIndex tail = e / 3;
  return {tail, neighbor(tail, e % 3)};
}

bool LatticeGeometry::is_wrap(EdgeIndex e) const {
  const Site t = site(e / 3);
  const Offset o = kDirections[e % 3];
  return t.x + o.dx >= side_ || t.y + o.dy >= side_;
}

std::vector<EdgeIndex> LatticeGeometry::wrap_edges() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (is_wrap(e)) out.push_back(e);
  return out;
}

std::pair<DualVertex, DualVertex> LatticeGeometry::dual_endpoints(EdgeIndex e) const {
  const SiteIndex s = e / 3;
  const Site p = site(s);
  switch (e % 3) {
    case 0:
      return {2 * s, 2 * index({p.x, p.y - 1}) + 1};
    case 1:
      return {2 * s + 1, 2 * index({p.x - 1, p.y})};
    default:
      return {2 * s, 2 * s + 1};
  }
}

std::array<EdgeIndex, 3> LatticeGeometry::dual_incident(DualVertex t) const {
  const SiteIndex s = t / 2;
  const Site p = site(s);
  if (t % 2 == 0) return {3 * s, 3 * index({p.x + 1, p.y}) + 1, 3 * s + 2};
  return {3 * s + 1, 3 * index({p.x, p.y + 1}), 3 * s + 2};
}

std::array<SiteIndex, 3> LatticeGeometry::triangle(DualVertex t) const {
  const SiteIndex s = t / 2;
  const Site p = site(s);
  if (t % 2 == 0) return {s, index({p.x + 1, p.y}), index({p.x + 1, p.y + 1})};
  return {s, index({p.x, p.y + 1}), index({p.x + 1, p.y + 1})};
}

}  // namespace sops
