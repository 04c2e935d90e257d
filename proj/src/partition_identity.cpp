#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sops/errors.hpp"
#include "sops/polymer.hpp"

namespace sops {

namespace {

struct RegionPolymer {
  std::uint64_t vertices = 0;  // bitmask over region-local site indices
  double weight = 0.0;
};

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double family_sum(const std::vector<RegionPolymer>& polymers, std::size_t start, std::uint64_t used,
                  std::uint64_t& families) {
  ++families;
  double total = 1.0;
  for (std::size_t i = start; i < polymers.size(); ++i)
    if ((polymers[i].vertices & used) == 0)
      total += polymers[i].weight * family_sum(polymers, i + 1, used | polymers[i].vertices, families);
  return total;
}

}  // namespace

PartitionIdentityResult polymer_partition_identity_check(const Configuration& shape, double lambda, double gamma,
                                                         Model model, double tolerance) {
  if (!is_simply_connected(shape) || shape.n() == 0) throw domain_error("region must be simply connected and nonempty");
  if (!(lambda > 0 && gamma > 0)) throw domain_error("lambda and gamma must be positive");
  const LatticeGeometry& g = shape.geometry();
  const int q = shape.q();

  std::vector<SiteIndex> region(shape.particles().begin(), shape.particles().end());
  std::sort(region.begin(), region.end());
  if (region.size() > 64) throw budget_error("region exceeds 64 sites");
  std::vector<int> local(static_cast<std::size_t>(g.site_count()), -1);
  for (std::size_t i = 0; i < region.size(); ++i) local[static_cast<std::size_t>(region[i])] = static_cast<int>(i);
  std::vector<SiteIndex> interior;
  for (SiteIndex s : region) {
    bool inner = true;
    for (SiteIndex u : g.neighbors(s)) inner = inner && shape.occupied(u);
    if (inner) interior.push_back(s);
  }
  const int k = static_cast<int>(interior.size());
  if (k > 12) throw budget_error("more than 12 interior sites");
  const std::uint64_t assignments = ipow(static_cast<std::uint64_t>(q), k);
  if (assignments > 4'000'000) throw budget_error("too many interior orientation assignments");

  PartitionIdentityResult r;
  Configuration conf(shape.geometry_ptr(), q, Setting::Connected);
  for (SiteIndex s : region) conf.place(s, 0);
  const double p = static_cast<double>(perimeter(conf));
  const double base = -p * std::log(lambda * gamma);

  // Particle side, relative to (lambda gamma)^(-p).
  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  double particle_sum = 0.0;
  std::vector<RegionPolymer> polymers;
  for (std::uint64_t idx = 0; idx < assignments; ++idx) {
    if (idx > 0) {
      for (int i = 0; i < k; ++i) {
        auto& d = digits[static_cast<std::size_t>(i)];
        d = (d + 1) % q;
        conf.set_orientation(interior[static_cast<std::size_t>(i)], d);
        if (d != 0) break;
      }
    }
    const double lw = log_configuration_weight(conf.stats(), Setting::Connected, model, lambda, gamma);
    particle_sum += std::exp(lw - base);
    ++r.configurations;

    // Read the same assignment as a potential; keep it when its gradient
    // support is connected, i.e. it is a single polymer.
    if (idx == 0) continue;
    std::vector<std::pair<EdgeIndex, int>> labels;
    std::vector<int> parent(region.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int i) {
      while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      return i;
    };
    std::uint64_t vertices = 0;
    for (SiteIndex s : interior)
      for (SiteIndex u : g.neighbors(s)) {
        const EdgeIndex e = g.edge_between(s, u);
        const auto [tail, head] = g.endpoints(e);
        const int diff = ((conf.orientation(head) - conf.orientation(tail)) % q + q) % q;
        if (diff == 0) continue;
        bool dup = false;
        for (const auto& [f, l] : labels) dup = dup || f == e;
        if (dup) continue;
        labels.emplace_back(e, diff);
        const int a = local[static_cast<std::size_t>(tail)];
        const int b = local[static_cast<std::size_t>(head)];
        vertices |= (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        parent[static_cast<std::size_t>(find(a))] = find(b);
      }
    int roots = 0;
    for (std::size_t i = 0; i < region.size(); ++i)
      if ((vertices >> i) & 1u) roots += find(static_cast<int>(i)) == static_cast<int>(i) ? 1 : 0;
    if (roots != 1) continue;
    PolymerLabeling poly;
    std::sort(labels.begin(), labels.end());
    poly.labels = std::move(labels);
    polymers.push_back({vertices, std::exp(polymer_log_weight(poly, q, model, gamma))});
  }
  r.polymers = polymers.size();

  const double xi = family_sum(polymers, 0, 0, r.families);
  r.log_particle_side = base + std::log(particle_sum);
  r.log_polymer_side = base + std::log(xi);
  r.relative_error = std::abs(particle_sum - xi) / xi;
  r.pass = r.relative_error <= tolerance;
  return r;
}

}  // namespace sops
