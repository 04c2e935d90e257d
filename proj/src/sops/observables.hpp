#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sops/configuration.hpp"

namespace sops {

struct AlignmentReport {
  std::vector<std::int64_t> counts;
  int dominant = 0;
  double rho_p = 0.0;
};

AlignmentReport alignment_report(const Configuration& c);
bool is_aligned(const Configuration& c, double delta);
bool is_eps_nonaligned(const Configuration& c, double eps);

std::int64_t p_min_exact(std::int64_t n);
std::int64_t p_max(std::int64_t n);
bool is_alpha_compressed(const Configuration& c, double alpha);
bool is_beta_expanded(const Configuration& c, double beta);

struct BdMin {
  double value = 0.0;
  bool exact = true;
};
// Minimum dual boundary length of a k-site region on an N-site torus.
BdMin bd_min(std::int64_t k, std::int64_t sites);
// Leading coefficient of sqrt(N) in the minimum boundary of a region of cN sites.
double bd_min_asymptotic(double c);

// First m sites of the hexagonal spiral grown around `center`.
std::vector<SiteIndex> spiral_sites(const LatticeGeometry& g, SiteIndex center, std::int64_t m);

// Edges with exactly one endpoint in the region (region given as a site mask).
std::int64_t region_boundary_length(const LatticeGeometry& g, std::span<const char> in_region);
// Occupied-occupied edges with exactly one endpoint in `region`.
std::int64_t internal_boundary_contour_length(const Configuration& c, std::span<const SiteIndex> region);

}  // namespace sops
