#pragma once

#include <cstdint>
#include <vector>

#include "sops/configuration.hpp"

namespace sops {

// Vacancies act as the extra colour -1 throughout this module, which is
// exactly what Configuration::orientation reports for an empty site.

struct BridgeSystem {
  std::vector<EdgeIndex> bridges;  // B, sorted dual edge indices
  std::vector<EdgeIndex> bridged;  // I, sorted dual edge indices
  std::vector<int> theta;          // per site, -1 for the vacant colour
  double delta = 0.0;
};

// Complex contours: connected components of the heterogeneous dual edges.
struct ContourPartition {
  std::vector<std::int32_t> contour_of_edge;  // -1 for homogeneous edges
  std::vector<std::int32_t> contour_of_vertex;  // -1 when no heterogeneous edge meets the dual vertex
  std::vector<std::vector<EdgeIndex>> contours;
};
ContourPartition complex_contours(const Configuration& c);

// Components of the primal lattice after deleting edges in `cut`.
std::vector<std::int32_t> regions_after_cut(const LatticeGeometry& g, const std::vector<char>& cut);

// Sites joined by a monochromatic path (vacancy counts as a colour) to a site
// incident to an edge of `anchor` or to a seam-crossing edge.
std::vector<char> bridged_sites(const Configuration& c, const std::vector<char>& anchor);

BridgeSystem construct_bridge_system(const Configuration& c, double delta);

struct RegionReport {
  std::vector<SiteIndex> region;
  std::int64_t boundary_length = 0;
  std::int64_t empty_inside = 0;
  std::int64_t particles_outside = 0;
  int dominant_inside = -1;
  std::int64_t dominant_count = 0;
};

RegionReport region_report(const Configuration& c, const BridgeSystem& system);
RegionReport aggregation_region(const Configuration& c, double delta);

// Aggregation clauses: vacancies inside, particles outside, boundary length.
bool is_aggregated(const Configuration& c, const RegionReport& r, double alpha, double delta);
// Aggregation with alignment: one orientation fills (1 - delta)|R|, plus the
// outside and boundary clauses.
bool is_aggregated_aligned(const Configuration& c, const RegionReport& r, double alpha, double delta);

}  // namespace sops
