#include "sops/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sops/errors.hpp"

namespace sops {

AlignmentReport alignment_report(const Configuration& c) {
  if (c.n() == 0) throw domain_error("alignment of an empty configuration is undefined");
  AlignmentReport r;
  r.counts.assign(static_cast<std::size_t>(c.q()), 0);
  for (SiteIndex s : c.particles()) ++r.counts[static_cast<std::size_t>(c.orientation(s))];
  r.dominant = static_cast<int>(std::max_element(r.counts.begin(), r.counts.end()) - r.counts.begin());
  r.rho_p = static_cast<double>(r.counts[static_cast<std::size_t>(r.dominant)]) / c.n();
  return r;
}

bool is_aligned(const Configuration& c, double delta) {
  const auto r = alignment_report(c);
  return static_cast<double>(r.counts[static_cast<std::size_t>(r.dominant)]) >= (1.0 - delta) * c.n();
}

bool is_eps_nonaligned(const Configuration& c, double eps) {
  if (!(eps > 0 && eps < 1.0 / c.q())) throw domain_error("eps must lie in (0, 1/q)");
  const auto r = alignment_report(c);
  for (std::int64_t k : r.counts)
    if (std::abs(static_cast<double>(k) / c.n() - 1.0 / c.q()) > eps) return false;
  return true;
}

std::int64_t p_min_exact(std::int64_t n) {
  if (n < 1) throw domain_error("p_min requires n >= 1");
  auto capacity = [](std::int64_t p) { return ((p + 3) * (p + 3) + 3) / 12; };
  auto p = static_cast<std::int64_t>(std::floor(2.0 * std::sqrt(3.0 * static_cast<double>(n)))) - 4;
  if (p < 0) p = 0;
  while (p > 0 && capacity(p - 1) >= n) --p;
  while (capacity(p) < n) ++p;
  return p;
}

std::int64_t p_max(std::int64_t n) {
  if (n < 1) throw domain_error("p_max requires n >= 1");
  return n == 1 ? 0 : 2 * n - 2;
}

bool is_alpha_compressed(const Configuration& c, double alpha) {
  return static_cast<double>(perimeter(c)) <= alpha * static_cast<double>(p_min_exact(c.n()));
}

bool is_beta_expanded(const Configuration& c, double beta) {
  return static_cast<double>(perimeter(c)) > beta * static_cast<double>(p_max(c.n()));
}

double bd_min_asymptotic(double c) {
  if (!(c > 0 && c <= 1)) throw domain_error("bd_min fraction must lie in (0, 1]");
  if (c < 1.0 / 3.0) return 4.0 * std::sqrt(3.0 * c);
  if (c <= 2.0 / 3.0) return 4.0;
  return 4.0 * std::sqrt(3.0 * (1.0 - c));
}

BdMin bd_min(std::int64_t k, std::int64_t sites) {
  if (k < 1 || k > sites) throw domain_error("bd_min requires 1 <= k <= N");
  if (3 * k < sites) return {static_cast<double>(2 * p_min_exact(k) + 6), true};
  const double c = static_cast<double>(k) / static_cast<double>(sites);
  return {bd_min_asymptotic(c) * std::sqrt(static_cast<double>(sites)), false};
}

std::vector<SiteIndex> spiral_sites(const LatticeGeometry& g, SiteIndex center, std::int64_t m) {
  if (m < 0 || m > g.site_count()) throw domain_error("spiral size out of range");
  std::vector<SiteIndex> out;
  out.reserve(static_cast<std::size_t>(m));
  if (m == 0) return out;
  out.push_back(center);
  const Site v = g.site(center);
  for (int k = 1; static_cast<std::int64_t>(out.size()) < m; ++k) {
    const Offset corner_dir = kDirections[static_cast<std::size_t>(kAngularOrder[4])];
    Site p{v.x + k * corner_dir.dx, v.y + k * corner_dir.dy};
    for (int side = 0; side < 6 && static_cast<std::int64_t>(out.size()) < m; ++side) {
      const Offset d = kDirections[static_cast<std::size_t>(kAngularOrder[static_cast<std::size_t>(side)])];
      for (int i = 0; i < k && static_cast<std::int64_t>(out.size()) < m; ++i) {
        p = {p.x + d.dx, p.y + d.dy};
        out.push_back(g.index(p));
      }
    }
  }
  return out;
}

std::int64_t region_boundary_length(const LatticeGeometry& g, std::span<const char> in_region) {
  std::int64_t count = 0;
  for (SiteIndex s = 0; s < g.site_count(); ++s)
    for (int f = 0; f < 3; ++f)
      if ((in_region[static_cast<std::size_t>(s)] != 0) != (in_region[static_cast<std::size_t>(g.neighbor(s, f))] != 0))
        ++count;
  return count;
}

std::int64_t internal_boundary_contour_length(const Configuration& c, std::span<const SiteIndex> region) {
  const LatticeGeometry& g = c.geometry();
  std::vector<char> in(static_cast<std::size_t>(g.site_count()), 0);
  for (SiteIndex s : region) {
    if (!c.occupied(s)) throw domain_error("region contains an empty site");
    in[static_cast<std::size_t>(s)] = 1;
  }
  std::int64_t count = 0;
  for (SiteIndex s : region)
    for (SiteIndex u : g.neighbors(s))
      if (c.occupied(u) && !in[static_cast<std::size_t>(u)]) ++count;
  return count;
}

}  // namespace sops
