#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sops/configuration.hpp"
#include "sops/dynamics.hpp"
#include "sops/run_config.hpp"

namespace sops {

inline constexpr const char* kArtifactVersion = "0.3.0";

// One sampled row of the metrics stream. Optional fields are left empty in
// the CSV when the setting does not define them.
struct MetricsRow {
  std::uint64_t step = 0;
  int n = 0;
  std::int64_t a = 0;
  std::int64_t h = 0;
  double d_sum = 0.0;
  std::optional<std::int64_t> perimeter;
  double rho_p = 0.0;
  int dominant = 0;
  bool aligned = false;
  bool nonaligned = false;
  std::optional<bool> compressed;
  std::optional<bool> expanded;
  std::optional<bool> aggregated;
  std::optional<std::int64_t> bridge_i_len;
  std::optional<std::int64_t> bridge_b_len;
};

MetricsRow measure(const Configuration& c, std::uint64_t step, const Classifiers& k);

// Majority vote of each classifier over the final 10% of samples (at least one).
struct WindowClassification {
  std::size_t window = 0;
  bool aligned = false;
  bool nonaligned = false;
  std::optional<bool> compressed;
  std::optional<bool> expanded;
  std::optional<bool> aggregated;
};
WindowClassification classify_window(const std::vector<MetricsRow>& rows);

// Seed for initial-condition randomness, kept apart from the chain's stream.
std::uint64_t initial_seed(std::uint64_t seed);

Configuration make_initial(const RunConfig& cfg);
ChainParams chain_params(const RunConfig& cfg);

struct RunResult {
  std::string config_hash;
  std::vector<MetricsRow> rows;
  WindowClassification classification;
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;
  Configuration final_state;
};

// Runs a full experiment. `on_row` sees every sampled row as it is produced.
RunResult run_experiment(const RunConfig& cfg, const std::function<void(const MetricsRow&)>& on_row = {});

// Runs an experiment and writes every configured output file.
RunResult run_with_outputs(const RunConfig& cfg);

struct SweepCell {
  double lambda = 0.0;
  std::optional<double> gamma;
};

struct ReplicaOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  WindowClassification classification;
};

struct SweepCellSummary {
  SweepCell cell;
  std::vector<ReplicaOutcome> replicas;  // in seed-list order
  std::size_t failures = 0;
  double aligned = 0.0;
  double nonaligned = 0.0;
  std::optional<double> compressed;
  std::optional<double> expanded;
  std::optional<double> aggregated;
};

struct SweepSummary {
  std::string base_hash;
  std::vector<SweepCellSummary> cells;
  bool any_failure = false;
};

// Pure fold of replica outcomes into the per-cell summary; independent of the
// order in which replicas finished.
SweepCellSummary summarize_cell(const SweepCell& cell, std::vector<ReplicaOutcome> replicas);

// Runs every (cell, seed) replica on a pool of `threads` workers (0 means
// hardware concurrency). With `replica_dir` set, each replica writes its
// metrics CSV there.
SweepSummary run_sweep(const RunConfig& base, const std::vector<double>& lambdas, const std::vector<double>& gammas,
                       const std::vector<std::uint64_t>& seeds, unsigned threads = 0,
                       const std::string& replica_dir = {});

}  // namespace sops
