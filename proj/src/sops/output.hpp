#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "sops/experiment.hpp"

namespace sops {

std::string metrics_header();
std::string metrics_row(const MetricsRow& r);
// "# key: value" lines preceding the header.
std::string metrics_metadata(const RunConfig& cfg);

class MetricsWriter {
 public:
  MetricsWriter(const std::string& path, const RunConfig& cfg);
  void write(const MetricsRow& r);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

struct SnapshotParticle {
  int x = 0;
  int y = 0;
  int theta = 0;
  friend bool operator==(const SnapshotParticle&, const SnapshotParticle&) = default;
};

struct Snapshot {
  std::string version = kArtifactVersion;
  std::string config_hash;
  std::string rng;
  std::uint64_t seed = 0;
  Setting setting = Setting::Connected;
  Model model = Model::Potts;
  int side = 0;
  int q = 2;
  std::uint64_t step = 0;
  std::uint64_t accepted = 0;
  std::string initial;
  std::vector<SnapshotParticle> particles;  // sorted by site index
};

Snapshot make_snapshot(const RunConfig& cfg, const RunResult& result);
Snapshot make_snapshot(const Configuration& c, const RunConfig& cfg, std::uint64_t step, std::uint64_t accepted);
std::string snapshot_to_json(const Snapshot& s);
Snapshot snapshot_from_json(const std::string& text);
Configuration snapshot_configuration(const Snapshot& s);

// Triangular lattice drawing: site (x, y) sits at ((x - y/2) s, y s sqrt(3)/2)
// up to a fixed shift, particles are circles filled from a fixed q-palette.
std::string render_svg(const Snapshot& s, double scale = 20.0);
std::string palette_colour(int theta, int q);

// Per-cell aggregate table with "# key: value" metadata lines.
std::string sweep_summary_csv(const SweepSummary& s, const std::vector<std::uint64_t>& seeds);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// config_hash recorded in a metrics CSV's metadata, and its final sampled step.
struct MetricsFileInfo {
  std::string config_hash;
  std::optional<std::uint64_t> last_step;
  std::size_t rows = 0;
};
MetricsFileInfo read_metrics_info(const std::string& path);

}  // namespace sops
