#include "sops/bridge.hpp"

#include <algorithm>
#include <map>

#include "sops/errors.hpp"
#include "sops/observables.hpp"

namespace sops {

namespace {

bool heterogeneous(const Configuration& c, EdgeIndex e) {
  const auto [u, v] = c.geometry().endpoints(e);
  return c.orientation(u) != c.orientation(v);
}

// Dominant colour of a histogram keyed by colour; ties go to the smaller colour.
int dominant_colour(const std::map<int, std::int64_t>& hist) {
  int best = -1;
  std::int64_t best_count = -1;
  for (const auto& [colour, count] : hist)
    if (count > best_count) {
      best = colour;
      best_count = count;
    }
  return best;
}

}  // namespace

ContourPartition complex_contours(const Configuration& c) {
  const LatticeGeometry& g = c.geometry();
  ContourPartition out;
  out.contour_of_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  out.contour_of_vertex.assign(static_cast<std::size_t>(g.dual_vertex_count()), -1);
  std::vector<char> hetero(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) hetero[static_cast<std::size_t>(e)] = heterogeneous(c, e);

  std::vector<DualVertex> stack;
  for (EdgeIndex start = 0; start < g.edge_count(); ++start) {
    if (!hetero[static_cast<std::size_t>(start)] || out.contour_of_edge[static_cast<std::size_t>(start)] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.contours.size());
    out.contours.emplace_back();
    auto& edges = out.contours.back();
    const auto [t0, t1] = g.dual_endpoints(start);
    for (DualVertex t : {t0, t1}) {
      if (out.contour_of_vertex[static_cast<std::size_t>(t)] < 0) {
        out.contour_of_vertex[static_cast<std::size_t>(t)] = id;
        stack.push_back(t);
      }
    }
    while (!stack.empty()) {
      const DualVertex t = stack.back();
      stack.pop_back();
      for (EdgeIndex e : g.dual_incident(t)) {
        if (!hetero[static_cast<std::size_t>(e)] || out.contour_of_edge[static_cast<std::size_t>(e)] >= 0) continue;
        out.contour_of_edge[static_cast<std::size_t>(e)] = id;
        edges.push_back(e);
        const auto [a, b] = g.dual_endpoints(e);
        for (DualVertex w : {a, b})
          if (out.contour_of_vertex[static_cast<std::size_t>(w)] < 0) {
            out.contour_of_vertex[static_cast<std::size_t>(w)] = id;
            stack.push_back(w);
          }
      }
    }
    std::sort(edges.begin(), edges.end());
  }
  return out;
}

std::vector<std::int32_t> regions_after_cut(const LatticeGeometry& g, const std::vector<char>& cut) {
  std::vector<std::int32_t> region(static_cast<std::size_t>(g.site_count()), -1);
  std::int32_t next = 0;
  std::vector<SiteIndex> stack;
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    if (region[static_cast<std::size_t>(s)] >= 0) continue;
    region[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const SiteIndex u = stack.back();
      stack.pop_back();
      for (int d = 0; d < 6; ++d) {
        const SiteIndex w = g.neighbor(u, d);
        if (region[static_cast<std::size_t>(w)] >= 0 || cut[static_cast<std::size_t>(g.edge(u, d))]) continue;
        region[static_cast<std::size_t>(w)] = next;
        stack.push_back(w);
      }
    }
    ++next;
  }
  return region;
}

std::vector<char> bridged_sites(const Configuration& c, const std::vector<char>& anchor) {
  const LatticeGeometry& g = c.geometry();
  std::vector<char> bridged(static_cast<std::size_t>(g.site_count()), 0);
  std::vector<SiteIndex> stack;
  auto mark = [&](SiteIndex s) {
    if (!bridged[static_cast<std::size_t>(s)]) {
      bridged[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  };
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!anchor[static_cast<std::size_t>(e)] && !g.is_wrap(e)) continue;
    const auto [u, v] = g.endpoints(e);
    mark(u);
    mark(v);
  }
  while (!stack.empty()) {
    const SiteIndex s = stack.back();
    stack.pop_back();
    for (SiteIndex u : g.neighbors(s))
      if (c.orientation(u) == c.orientation(s)) mark(u);
  }
  return bridged;
}

BridgeSystem construct_bridge_system(const Configuration& c, double delta) {
  if (!(delta > 0 && delta < 1)) throw domain_error("bridge system delta must lie in (0, 1)");
  const LatticeGeometry& g = c.geometry();
  const int side = g.side();
  const ContourPartition contours = complex_contours(c);
  std::vector<char> in_i(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<char> in_b(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<char> absorbed(contours.contours.size(), 0);

  auto absorb_at = [&](DualVertex t) {
    const std::int32_t id = contours.contour_of_vertex[static_cast<std::size_t>(t)];
    if (id < 0 || absorbed[static_cast<std::size_t>(id)]) return;
    absorbed[static_cast<std::size_t>(id)] = 1;
    for (EdgeIndex e : contours.contours[static_cast<std::size_t>(id)]) in_i[static_cast<std::size_t>(e)] = 1;
  };
  auto absorb_touching = [&](EdgeIndex e) {
    const auto [a, b] = g.dual_endpoints(e);
    absorb_at(a);
    absorb_at(b);
  };

  for (EdgeIndex e : g.wrap_edges()) absorb_touching(e);

  for (;;) {
    const auto region = regions_after_cut(g, in_i);
    const auto bridged = bridged_sites(c, in_i);
    const auto region_count = static_cast<std::size_t>(*std::max_element(region.begin(), region.end()) + 1);
    std::vector<std::int64_t> size(region_count, 0);
    std::vector<std::int64_t> unbridged(region_count, 0);
    for (SiteIndex s = 0; s < g.site_count(); ++s) {
      const auto r = static_cast<std::size_t>(region[static_cast<std::size_t>(s)]);
      ++size[r];
      if (c.occupied(s) && !bridged[static_cast<std::size_t>(s)]) ++unbridged[r];
    }
    // Regions are numbered by their smallest site, so this scan is in that order.
    std::size_t target = region_count;
    for (std::size_t r = 0; r < region_count; ++r)
      if (static_cast<double>(unbridged[r]) > delta * static_cast<double>(size[r])) {
        target = r;
        break;
      }
    if (target == region_count) break;

    int column = -1;
    for (int x = 0; x < side && column < 0; ++x) {
      std::int64_t col_size = 0;
      std::int64_t col_unbridged = 0;
      for (int y = 0; y < side; ++y) {
        const SiteIndex s = g.index({x, y});
        if (static_cast<std::size_t>(region[static_cast<std::size_t>(s)]) != target) continue;
        ++col_size;
        if (c.occupied(s) && !bridged[static_cast<std::size_t>(s)]) ++col_unbridged;
      }
      if (col_size > 0 && static_cast<double>(col_unbridged) > delta * static_cast<double>(col_size)) column = x;
    }
    if (column < 0) throw Error(ErrorKind::Runtime, "bridge construction found no eligible column");

    for (int y = 0; y < side; ++y) {
      const SiteIndex s = g.index({column, y});
      if (static_cast<std::size_t>(region[static_cast<std::size_t>(s)]) != target || !bridged[static_cast<std::size_t>(s)])
        continue;
      for (int dir : {0, 2}) {
        const EdgeIndex e = g.edge(s, dir);
        if (!in_i[static_cast<std::size_t>(e)] && !in_b[static_cast<std::size_t>(e)]) in_b[static_cast<std::size_t>(e)] = 1;
      }
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e)
      if (in_b[static_cast<std::size_t>(e)]) absorb_touching(e);
  }

  BridgeSystem out;
  out.delta = delta;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (in_i[static_cast<std::size_t>(e)]) out.bridged.push_back(e);
    if (in_b[static_cast<std::size_t>(e)] && !in_i[static_cast<std::size_t>(e)]) out.bridges.push_back(e);
  }

  // Region orientation: colour of sites joined monochromatically to the region boundary.
  const auto region = regions_after_cut(g, in_i);
  const auto region_count = static_cast<std::size_t>(*std::max_element(region.begin(), region.end()) + 1);
  std::vector<char> core(static_cast<std::size_t>(g.site_count()), 0);
  std::vector<SiteIndex> stack;
  for (EdgeIndex e : out.bridged) {
    const auto [u, v] = g.endpoints(e);
    if (region[static_cast<std::size_t>(u)] == region[static_cast<std::size_t>(v)]) continue;
    for (SiteIndex s : {u, v})
      if (!core[static_cast<std::size_t>(s)]) {
        core[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
      }
  }
  while (!stack.empty()) {
    const SiteIndex s = stack.back();
    stack.pop_back();
    for (SiteIndex u : g.neighbors(s))
      if (!core[static_cast<std::size_t>(u)] && c.orientation(u) == c.orientation(s) &&
          region[static_cast<std::size_t>(u)] == region[static_cast<std::size_t>(s)]) {
        core[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  const auto bridged = bridged_sites(c, in_i);
  std::vector<std::map<int, std::int64_t>> core_hist(region_count);
  std::vector<std::map<int, std::int64_t>> bridged_hist(region_count);
  std::vector<std::map<int, std::int64_t>> all_hist(region_count);
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    const auto r = static_cast<std::size_t>(region[static_cast<std::size_t>(s)]);
    const int colour = c.orientation(s);
    if (core[static_cast<std::size_t>(s)]) ++core_hist[r][colour];
    if (bridged[static_cast<std::size_t>(s)]) ++bridged_hist[r][colour];
    ++all_hist[r][colour];
  }
  std::vector<int> region_theta(region_count);
  for (std::size_t r = 0; r < region_count; ++r) {
    if (!core_hist[r].empty())
      region_theta[r] = dominant_colour(core_hist[r]);
    else if (!bridged_hist[r].empty())
      region_theta[r] = dominant_colour(bridged_hist[r]);
    else
      region_theta[r] = dominant_colour(all_hist[r]);
  }
  out.theta.resize(static_cast<std::size_t>(g.site_count()));
  for (SiteIndex s = 0; s < g.site_count(); ++s)
    out.theta[static_cast<std::size_t>(s)] = region_theta[static_cast<std::size_t>(region[static_cast<std::size_t>(s)])];
  return out;
}

RegionReport region_report(const Configuration& c, const BridgeSystem& system) {
  const LatticeGeometry& g = c.geometry();
  RegionReport r;
  std::vector<char> in(static_cast<std::size_t>(g.site_count()), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c.q()), 0);
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    const bool inside = system.theta[static_cast<std::size_t>(s)] != -1;
    in[static_cast<std::size_t>(s)] = inside ? 1 : 0;
    if (inside) {
      r.region.push_back(s);
      if (c.occupied(s))
        ++counts[static_cast<std::size_t>(c.orientation(s))];
      else
        ++r.empty_inside;
    } else if (c.occupied(s)) {
      ++r.particles_outside;
    }
  }
  r.boundary_length = region_boundary_length(g, in);
  if (!r.region.empty()) {
    const auto it = std::max_element(counts.begin(), counts.end());
    r.dominant_inside = static_cast<int>(it - counts.begin());
    r.dominant_count = *it;
  }
  return r;
}

RegionReport aggregation_region(const Configuration& c, double delta) {
  return region_report(c, construct_bridge_system(c, delta));
}

namespace {
bool outside_and_boundary_ok(const Configuration& c, const RegionReport& r, double alpha, double delta) {
  const auto sites = static_cast<double>(c.geometry().site_count());
  const auto region_size = static_cast<double>(r.region.size());
  if (static_cast<double>(r.particles_outside) > delta * (sites - region_size)) return false;
  const double bound = c.n() > 0 ? alpha * bd_min(c.n(), c.geometry().site_count()).value : 0.0;
  return static_cast<double>(r.boundary_length) <= bound;
}
}  // namespace

bool is_aggregated(const Configuration& c, const RegionReport& r, double alpha, double delta) {
  if (static_cast<double>(r.empty_inside) > delta * static_cast<double>(r.region.size())) return false;
  return outside_and_boundary_ok(c, r, alpha, delta);
}

bool is_aggregated_aligned(const Configuration& c, const RegionReport& r, double alpha, double delta) {
  if (static_cast<double>(r.dominant_count) < (1.0 - delta) * static_cast<double>(r.region.size())) return false;
  return outside_and_boundary_ok(c, r, alpha, delta);
}

}  // namespace sops
