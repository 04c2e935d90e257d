#include "sops/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "sops/errors.hpp"

namespace sops {

std::vector<SiteIndex> boundary_particles(const Configuration& c) {
  std::vector<SiteIndex> out;
  for (SiteIndex s = 0; s < c.geometry().site_count(); ++s) {
    if (!c.occupied(s)) continue;
    for (SiteIndex u : c.geometry().neighbors(s))
      if (!c.occupied(u)) {
        out.push_back(s);
        break;
      }
  }
  return out;
}

PolymerConfiguration encode_polymers(const Configuration& c) {
  if (!is_simply_connected(c)) throw domain_error("polymer encoding needs a simply connected configuration");
  for (SiteIndex s : boundary_particles(c))
    if (c.orientation(s) != 0) throw domain_error("boundary particle with nonzero orientation");

  const LatticeGeometry& g = c.geometry();
  const int q = c.q();
  std::vector<std::pair<EdgeIndex, int>> support;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto [tail, head] = g.endpoints(e);
    if (!c.occupied(tail) || !c.occupied(head)) continue;
    const int label = ((c.orientation(head) - c.orientation(tail)) % q + q) % q;
    if (label != 0) support.emplace_back(e, label);
  }

  // Union support edges that share an endpoint.
  std::vector<std::size_t> parent(support.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::map<SiteIndex, std::size_t> first_at;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto [tail, head] = g.endpoints(support[i].first);
    for (SiteIndex s : {tail, head}) {
      auto [it, fresh] = first_at.emplace(s, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, PolymerLabeling> groups;
  for (std::size_t i = 0; i < support.size(); ++i) groups[find(i)].labels.push_back(support[i]);
  PolymerConfiguration out;
  for (auto& [root, p] : groups) out.polymers.push_back(std::move(p));
  std::sort(out.polymers.begin(), out.polymers.end(),
            [](const PolymerLabeling& a, const PolymerLabeling& b) { return a.labels.front() < b.labels.front(); });
  return out;
}

Configuration decode_polymers(const Configuration& shape, const PolymerConfiguration& polymers) {
  const LatticeGeometry& g = shape.geometry();
  const int q = shape.q();
  std::vector<int> label(static_cast<std::size_t>(g.edge_count()), 0);
  for (const auto& p : polymers.polymers)
    for (const auto& [e, l] : p.labels) {
      if (l <= 0 || l >= q) throw domain_error("polymer label out of range");
      const auto [tail, head] = g.endpoints(e);
      if (!shape.occupied(tail) || !shape.occupied(head)) throw domain_error("polymer edge leaves the occupied region");
      if (label[static_cast<std::size_t>(e)] != 0) throw domain_error("polymers overlap on an edge");
      label[static_cast<std::size_t>(e)] = l;
    }

  std::vector<int> theta(static_cast<std::size_t>(g.site_count()), -1);
  std::vector<SiteIndex> stack = boundary_particles(shape);
  for (SiteIndex s : stack) theta[static_cast<std::size_t>(s)] = 0;
  while (!stack.empty()) {
    const SiteIndex u = stack.back();
    stack.pop_back();
    for (int d = 0; d < 6; ++d) {
      const SiteIndex w = g.neighbor(u, d);
      if (!shape.occupied(w)) continue;
      const int l = label[static_cast<std::size_t>(g.edge(u, d))];
      const int flow = d < 3 ? l : q - l;
      const int value = (theta[static_cast<std::size_t>(u)] + flow) % q;
      if (theta[static_cast<std::size_t>(w)] < 0) {
        theta[static_cast<std::size_t>(w)] = value;
        stack.push_back(w);
      } else if (theta[static_cast<std::size_t>(w)] != value) {
        throw domain_error("polymer labels are not a consistent flow");
      }
    }
  }

  Configuration out(shape.geometry_ptr(), q, shape.setting());
  for (SiteIndex s = 0; s < g.site_count(); ++s) {
    if (!shape.occupied(s)) continue;
    if (theta[static_cast<std::size_t>(s)] < 0) throw domain_error("occupied site unreachable from the boundary");
    out.place(s, theta[static_cast<std::size_t>(s)]);
  }
  return out;
}

double polymer_log_weight(const PolymerLabeling& p, int q, Model model, double gamma) {
  const double lg = std::log(gamma);
  if (model == Model::Potts) return -static_cast<double>(p.labels.size()) * lg;
  double s = 0.0;
  for (const auto& [e, l] : p.labels) s += (std::cos(2.0 * std::numbers::pi * l / q) - 1.0) * lg;
  return s;
}

double polymer_log_weight(const PolymerConfiguration& pc, int q, Model model, double gamma) {
  double s = 0.0;
  for (const auto& p : pc.polymers) s += polymer_log_weight(p, q, model, gamma);
  return s;
}

double log_configuration_weight(const BoundaryStats& s, Setting setting, Model model, double lambda, double gamma) {
  const double pairs = model == Model::Potts ? static_cast<double>(s.h) : s.d_sum;
  if (setting == Setting::Connected) {
    const double p = static_cast<double>(s.a - 6) / 2.0;
    return -p * std::log(lambda * gamma) - pairs * std::log(gamma);
  }
  return -(static_cast<double>(s.a) + pairs) * std::log(lambda);
}

}  // namespace sops
