#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sops/configuration.hpp"

namespace sops {

// Nonzero edge labels of one polymer, sorted by edge index. A label l on
// edge e means orientation(head) - orientation(tail) = l (mod q) along the
// canonical direction of e.
struct PolymerLabeling {
  std::vector<std::pair<EdgeIndex, int>> labels;
  friend bool operator==(const PolymerLabeling&, const PolymerLabeling&) = default;
};

struct PolymerConfiguration {
  std::vector<PolymerLabeling> polymers;
  friend bool operator==(const PolymerConfiguration&, const PolymerConfiguration&) = default;
};

// Occupied sites with at least one vacant neighbour.
std::vector<SiteIndex> boundary_particles(const Configuration& c);

// Requires a simply connected configuration whose boundary particles all
// have orientation 0.
PolymerConfiguration encode_polymers(const Configuration& c);

// Rebuilds orientations on the occupied sites of `shape` (its orientations
// are ignored) from boundary value 0 and the polymer flows.
Configuration decode_polymers(const Configuration& shape, const PolymerConfiguration& polymers);

// Log weight of one polymer: -|E| log(gamma) (Potts) or
// sum over edges of (cos(2 pi l / q) - 1) log(gamma) (clock).
double polymer_log_weight(const PolymerLabeling& p, int q, Model model, double gamma);
double polymer_log_weight(const PolymerConfiguration& pc, int q, Model model, double gamma);

// Log of the stationary weight: connected setting, (lambda gamma)^(-p) times
// gamma^(-h) (Potts) or gamma^(-d_sum) (clock); general setting,
// lambda^(-a - h) or lambda^(-a - d_sum).
double log_configuration_weight(const BoundaryStats& s, Setting setting, Model model, double lambda, double gamma);

struct PartitionIdentityResult {
  double log_particle_side = 0.0;
  double log_polymer_side = 0.0;
  double relative_error = 0.0;
  std::uint64_t configurations = 0;
  std::uint64_t polymers = 0;
  std::uint64_t families = 0;
  bool pass = false;
};

// Exhaustive check of w(Omega_P^0) = (lambda gamma)^(-p) Xi_P for the region
// formed by the occupied sites of `shape` (orientations ignored). The left
// side sums particle weights over all interior orientation assignments with
// the boundary fixed at 0; the right side sums products of polymer weights
// over all families of pairwise compatible polymers inside the region.
PartitionIdentityResult polymer_partition_identity_check(const Configuration& shape, double lambda, double gamma,
                                                         Model model, double tolerance = 1e-10);

}  // namespace sops
