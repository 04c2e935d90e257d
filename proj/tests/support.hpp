#pragma once

// Shared fixtures, hand-rolled generators and independent oracles for the
// test binaries. Nothing here calls the library's own recomputation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sops/bridge.hpp"
#include "sops/configuration.hpp"
#include "sops/lattice.hpp"
#include "sops/rng.hpp"

namespace testing {

using sops::Configuration;
using sops::EdgeIndex;
using sops::LatticeGeometry;
using sops::Setting;
using sops::Site;
using sops::SiteIndex;

inline std::shared_ptr<const LatticeGeometry> torus(int side) { return std::make_shared<const LatticeGeometry>(side); }

struct Placed {
  Site at;
  int theta = 0;
};

inline Configuration build(int side, int q, Setting setting, const std::vector<Placed>& particles) {
  Configuration c(torus(side), q, setting);
  for (const auto& p : particles) c.place(c.geometry().index(p.at), p.theta);
  return c;
}

// Centre (cx, cy) plus its six neighbours; `centre_theta` on the centre,
// `ring_theta` on the ring.
inline Configuration hexagon7(int side, int q, int centre_theta = 0, int ring_theta = 0,
                              Setting setting = Setting::Connected) {
  const int m = side / 2;
  std::vector<Placed> ps{{{m, m}, centre_theta}};
  for (const auto& d : sops::kDirections) ps.push_back({{m + d.dx, m + d.dy}, ring_theta});
  return build(side, q, setting, ps);
}

inline Configuration line(int side, int q, int n, Setting setting = Setting::Connected) {
  std::vector<Placed> ps;
  for (int i = 0; i < n; ++i) ps.push_back({{(side - n) / 2 + i, side / 2}, 0});
  return build(side, q, setting, ps);
}

// ---- direct statistics -----------------------------------------------------

struct NaiveStats {
  std::int64_t a = 0;
  std::int64_t h = 0;
  double d_sum = 0.0;
};

inline NaiveStats naive_stats(const Configuration& c) {
  const auto& g = c.geometry();
  NaiveStats s;
  const double two_pi = 2.0 * std::acos(-1.0);
  for (SiteIndex u = 0; u < g.site_count(); ++u)
    for (int f = 0; f < 3; ++f) {
      const SiteIndex v = g.neighbor(u, f);
      const bool ou = c.orientation(u) >= 0;
      const bool ov = c.orientation(v) >= 0;
      if (ou != ov) ++s.a;
      if (ou && ov) {
        if (c.orientation(u) != c.orientation(v)) ++s.h;
        s.d_sum += 1.0 - std::cos(two_pi * (c.orientation(u) - c.orientation(v)) / c.q());
      }
    }
  return s;
}

inline std::vector<int> components(const LatticeGeometry& g, const std::vector<char>& in) {
  std::vector<int> comp(in.size(), -1);
  int next = 0;
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    if (!in[static_cast<std::size_t>(s)] || comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<SiteIndex> todo{s};
    comp[static_cast<std::size_t>(s)] = next;
    while (!todo.empty()) {
      const SiteIndex u = todo.back();
      todo.pop_back();
      for (int d = 0; d < 6; ++d) {
        const SiteIndex w = g.neighbor(u, d);
        if (in[static_cast<std::size_t>(w)] && comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = next;
          todo.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

inline int component_count(const LatticeGeometry& g, const std::vector<char>& in) {
  const auto comp = components(g, in);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

inline bool naive_simply_connected(const Configuration& c) {
  const auto& g = c.geometry();
  std::vector<char> occ(static_cast<std::size_t>(g.site_count())), vac(occ.size());
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    occ[static_cast<std::size_t>(s)] = c.orientation(s) >= 0;
    vac[static_cast<std::size_t>(s)] = !occ[static_cast<std::size_t>(s)];
  }
  return component_count(g, occ) <= 1 && component_count(g, vac) <= 1;
}

// Length of the closed boundary walk around a non-wrapping simply connected
// cluster, traced neighbour by neighbour in angular order.
inline std::int64_t traced_perimeter(const Configuration& c) {
  const auto& g = c.geometry();
  if (c.n() <= 1) return 0;
  // Bottom-most then left-most particle: its (0,-1) neighbour is outside.
  SiteIndex start = -1;
  for (SiteIndex s : c.particles()) {
    const Site a = g.site(s);
    if (start < 0) {
      start = s;
      continue;
    }
    const Site b = g.site(start);
    if (a.y < b.y || (a.y == b.y && a.x < b.x)) start = s;
  }
  auto slot_of = [](int dir) {
    for (int i = 0; i < 6; ++i)
      if (sops::kAngularOrder[static_cast<std::size_t>(i)] == dir) return i;
    return -1;
  };
  // Scan counter-clockwise from the slot after `from_slot` for an occupied neighbour.
  auto next_from = [&](SiteIndex u, int from_slot) {
    for (int k = 1; k <= 6; ++k) {
      const int slot = (from_slot + k) % 6;
      const SiteIndex w = g.neighbor(u, sops::kAngularOrder[static_cast<std::size_t>(slot)]);
      if (c.occupied(w)) return std::pair{w, slot};
    }
    return std::pair{SiteIndex{-1}, -1};
  };
  const auto first = next_from(start, slot_of(4));
  SiteIndex prev = start;
  SiteIndex cur = first.first;
  std::int64_t steps = 1;
  for (;;) {
    const int back = slot_of(g.direction_between(cur, prev));
    const auto nxt = next_from(cur, back);
    if (cur == start && nxt.first == first.first) break;
    prev = cur;
    cur = nxt.first;
    ++steps;
  }
  return steps;
}

// ---- generators ------------------------------------------------------------

// n distinct uniformly random sites with uniform orientations.
inline Configuration random_general(sops::Rng& rng, int side, int q, int n) {
  Configuration c(torus(side), q, Setting::General);
  while (c.n() < n) {
    const auto s = static_cast<SiteIndex>(rng.below(static_cast<std::uint64_t>(side * side)));
    if (!c.occupied(s)) c.place(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(q))));
  }
  return c;
}

// Blobby general configuration: random seeds grown by neighbour accretion,
// coloured in patches, so that contours have structure.
inline Configuration random_clustered(sops::Rng& rng, int side, int q, int n) {
  Configuration c(torus(side), q, Setting::General);
  const auto& g = c.geometry();
  std::vector<SiteIndex> frontier;
  while (c.n() < n) {
    SiteIndex s;
    int theta;
    if (frontier.empty() || rng.below(8) == 0) {
      s = static_cast<SiteIndex>(rng.below(static_cast<std::uint64_t>(g.site_count())));
      theta = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    } else {
      const SiteIndex base = frontier[rng.below(frontier.size())];
      s = g.neighbor(base, static_cast<int>(rng.below(6)));
      theta = rng.below(5) == 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(q))) : c.orientation(base);
    }
    if (c.occupied(s)) continue;
    c.place(s, theta);
    frontier.push_back(s);
  }
  return c;
}

// Simply connected cluster grown from the centre by random accretion.
inline Configuration random_simply_connected(sops::Rng& rng, int side, int q, int n) {
  Configuration c(torus(side), q, Setting::Connected);
  const auto& g = c.geometry();
  c.place(g.index({side / 2, side / 2}), static_cast<int>(rng.below(static_cast<std::uint64_t>(q))));
  while (c.n() < n) {
    const auto parts = c.particles();
    const SiteIndex base = parts[rng.below(parts.size())];
    const SiteIndex s = g.neighbor(base, static_cast<int>(rng.below(6)));
    if (c.occupied(s)) continue;
    c.place(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(q))));
    if (!naive_simply_connected(c)) c.remove(s);
  }
  return c;
}

// Canonical translation-free key of an occupied shape (ignores orientations),
// valid for clusters that do not wrap.
inline std::vector<std::pair<int, int>> shape_key(const Configuration& c) {
  const auto& g = c.geometry();
  std::vector<std::pair<int, int>> pts;
  for (SiteIndex s : c.particles()) pts.emplace_back(g.site(s).x, g.site(s).y);
  std::sort(pts.begin(), pts.end());
  if (pts.empty()) return pts;
  int mx = pts.front().first, my = pts.front().second;
  for (const auto& p : pts) {
    mx = std::min(mx, p.first);
    my = std::min(my, p.second);
  }
  for (auto& p : pts) p = {p.first - mx, p.second - my};
  std::sort(pts.begin(), pts.end());
  return pts;
}

// ---- bridge-system definition checker --------------------------------------

struct BridgeVerdict {
  bool i_min_degree = true;
  bool anchor_connected = true;
  bool anchor_min_degree = true;
  bool b_disjoint_i = true;
  bool b_size_bound = true;
  bool theta_matches_i = true;
  bool contours_separated = true;
  bool region_fraction = true;
  bool theta_from_bridged = true;
  std::string detail;

  bool ok() const {
    return i_min_degree && anchor_connected && anchor_min_degree && b_disjoint_i && b_size_bound && theta_matches_i &&
           contours_separated && region_fraction && theta_from_bridged;
  }
};

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Checks a bridge system against the definition: the four structural
// invariants, contour separation, per-region unbridged fraction and the
// provenance of Theta. Sites are "bridged" when a monochromatic path (vacancy
// is a colour) reaches an endpoint of an I or seam edge.
inline BridgeVerdict check_bridge_system(const Configuration& c, const sops::BridgeSystem& bs) {
  const auto& g = c.geometry();
  const auto E = static_cast<std::size_t>(g.edge_count());
  const auto V = static_cast<std::size_t>(g.dual_vertex_count());
  BridgeVerdict v;
  std::vector<char> in_i(E, 0), in_b(E, 0), wrap(E, 0);
  for (EdgeIndex e : bs.bridged) in_i[static_cast<std::size_t>(e)] = 1;
  for (EdgeIndex e : bs.bridges) in_b[static_cast<std::size_t>(e)] = 1;
  for (EdgeIndex e : g.wrap_edges()) wrap[static_cast<std::size_t>(e)] = 1;

  auto degrees = [&](const std::vector<char>& set) {
    std::vector<int> deg(V, 0);
    for (std::size_t e = 0; e < E; ++e)
      if (set[e]) {
        const auto [a, b] = g.dual_endpoints(static_cast<EdgeIndex>(e));
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
      }
    return deg;
  };
  for (int d : degrees(in_i))
    if (d == 1) v.i_min_degree = false;

  std::vector<char> anchor(E, 0);
  for (std::size_t e = 0; e < E; ++e) anchor[e] = in_i[e] || in_b[e] || wrap[e];
  const auto adeg = degrees(anchor);
  for (int d : adeg)
    if (d == 1) v.anchor_min_degree = false;
  DisjointSets ds(V);
  for (std::size_t e = 0; e < E; ++e)
    if (anchor[e]) {
      const auto [a, b] = g.dual_endpoints(static_cast<EdgeIndex>(e));
      ds.join(a, b);
    }
  std::set<int> roots;
  for (std::size_t t = 0; t < V; ++t)
    if (adeg[t] > 0) roots.insert(ds.find(static_cast<int>(t)));
  v.anchor_connected = roots.size() <= 1;

  for (std::size_t e = 0; e < E; ++e)
    if (in_i[e] && in_b[e]) v.b_disjoint_i = false;
  v.b_size_bound = static_cast<double>(bs.bridges.size()) <=
                   (1.0 - bs.delta) / (2.0 * bs.delta) * static_cast<double>(bs.bridged.size()) + 1e-9;

  for (std::size_t e = 0; e < E; ++e) {
    const auto [x, y] = g.endpoints(static_cast<EdgeIndex>(e));
    const bool same = bs.theta[static_cast<std::size_t>(x)] == bs.theta[static_cast<std::size_t>(y)];
    if (same == static_cast<bool>(in_i[e])) {
      v.theta_matches_i = false;
      v.detail += "theta/I mismatch at edge " + std::to_string(e) + "; ";
      break;
    }
  }

  // Complex contours: heterogeneous dual edges joined through shared dual vertices.
  std::vector<char> hetero(E, 0);
  DisjointSets cs(V);
  for (std::size_t e = 0; e < E; ++e) {
    const auto [x, y] = g.endpoints(static_cast<EdgeIndex>(e));
    hetero[e] = c.orientation(x) != c.orientation(y);
    if (hetero[e]) {
      const auto [a, b] = g.dual_endpoints(static_cast<EdgeIndex>(e));
      cs.join(a, b);
    }
  }
  std::map<int, std::vector<std::size_t>> contour_edges;
  for (std::size_t e = 0; e < E; ++e)
    if (hetero[e]) contour_edges[cs.find(g.dual_endpoints(static_cast<EdgeIndex>(e)).first)].push_back(e);
  for (const auto& [root, edges] : contour_edges) {
    bool all_in_i = true, meets = false;
    for (std::size_t e : edges) {
      all_in_i = all_in_i && in_i[e];
      const auto [a, b] = g.dual_endpoints(static_cast<EdgeIndex>(e));
      meets = meets || adeg[static_cast<std::size_t>(a)] > 0 || adeg[static_cast<std::size_t>(b)] > 0;
    }
    if (meets && !all_in_i) v.contours_separated = false;
  }

  // Regions and bridged sites.
  const auto S = static_cast<std::size_t>(g.site_count());
  std::vector<int> region(S, -1);
  int regions = 0;
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    if (region[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<SiteIndex> todo{s};
    region[static_cast<std::size_t>(s)] = regions;
    while (!todo.empty()) {
      const SiteIndex u = todo.back();
      todo.pop_back();
      for (int d = 0; d < 6; ++d) {
        const SiteIndex w = g.neighbor(u, d);
        if (region[static_cast<std::size_t>(w)] < 0 && !in_i[static_cast<std::size_t>(g.edge(u, d))]) {
          region[static_cast<std::size_t>(w)] = regions;
          todo.push_back(w);
        }
      }
    }
    ++regions;
  }
  std::vector<char> bridged(S, 0);
  std::vector<SiteIndex> todo;
  for (std::size_t e = 0; e < E; ++e)
    if (in_i[e] || wrap[e]) {
      const auto [x, y] = g.endpoints(static_cast<EdgeIndex>(e));
      for (SiteIndex s : {x, y})
        if (!bridged[static_cast<std::size_t>(s)]) {
          bridged[static_cast<std::size_t>(s)] = 1;
          todo.push_back(s);
        }
    }
  while (!todo.empty()) {
    const SiteIndex u = todo.back();
    todo.pop_back();
    for (int d = 0; d < 6; ++d) {
      const SiteIndex w = g.neighbor(u, d);
      if (!bridged[static_cast<std::size_t>(w)] && c.orientation(w) == c.orientation(u)) {
        bridged[static_cast<std::size_t>(w)] = 1;
        todo.push_back(w);
      }
    }
  }
  std::vector<std::int64_t> size(static_cast<std::size_t>(regions), 0), unbridged(size.size(), 0);
  std::vector<std::set<int>> bridged_colours(size.size());
  std::vector<std::set<int>> thetas(size.size());
  for (std::size_t s = 0; s < S; ++s) {
    const auto r = static_cast<std::size_t>(region[s]);
    ++size[r];
    if (c.orientation(static_cast<SiteIndex>(s)) >= 0 && !bridged[s]) ++unbridged[r];
    if (bridged[s]) bridged_colours[r].insert(c.orientation(static_cast<SiteIndex>(s)));
    thetas[r].insert(bs.theta[s]);
  }
  for (std::size_t r = 0; r < size.size(); ++r) {
    if (static_cast<double>(unbridged[r]) > bs.delta * static_cast<double>(size[r])) {
      v.region_fraction = false;
      v.detail += "region " + std::to_string(r) + " unbridged " + std::to_string(unbridged[r]) + "/" +
                  std::to_string(size[r]) + "; ";
    }
    if (thetas[r].size() != 1 || (!bridged_colours[r].empty() && !bridged_colours[r].count(*thetas[r].begin())))
      v.theta_from_bridged = false;
  }
  return v;
}

}  // namespace testing
