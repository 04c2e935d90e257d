#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sops/types.hpp"

namespace sops {

enum class InitialKind { Line, Spiral, UniformRandom, FromSnapshot };

struct InitialCondition {
  InitialKind kind = InitialKind::Spiral;
  std::string snapshot_path;  // FromSnapshot only
};

std::string to_string(const InitialCondition& init);

struct Classifiers {
  double alpha = 3.0;
  double beta = 0.5;
  double delta = 0.3;
  double eps = 0.15;
};

struct Outputs {
  std::string metrics_csv;
  std::string snapshot_json;
  std::string render_svg;
};

struct RunConfig {
  Setting setting = Setting::Connected;
  Model model = Model::Potts;
  int side = 0;
  int n = 0;
  int q = 2;
  double lambda = 1.0;
  std::optional<double> gamma;
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_interval = 0;
  InitialCondition initial;
  Classifiers classifiers;
  Outputs outputs;
};

// Key/value form of a configuration. Keys are "setting", "model", "L", "n",
// "q", "lambda", "gamma", "steps", "seed", "sample_interval", "initial",
// "classifiers.<name>" and "outputs.<name>". Values stay textual until parse().
class ConfigDocument {
 public:
  static ConfigDocument from_file(const std::string& path);
  static ConfigDocument from_string(const std::string& text);

  // An empty value removes the key.
  void set(const std::string& key, const std::string& value);
  // "key=value" form.
  void set_assignment(const std::string& assignment);
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return values_; }

  // Typed configuration; throws a validation error listing every bad field.
  RunConfig parse() const;

 private:
  std::map<std::string, std::string> values_;
};

bool is_known_key(const std::string& key);

// Canonical text of the fields that determine a trajectory (output paths are
// excluded), and its 64-bit FNV-1a hash in hex.
std::string canonical_text(const RunConfig& c);
std::string config_hash(const RunConfig& c);
std::string fnv1a_hex(const std::string& bytes);

// Comma-separated lists for sweeps; seeds also accept inclusive ranges "a..b".
std::vector<double> parse_real_list(const std::string& field, const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& field, const std::string& text);

// Serializes back to the key/value file format.
std::string to_ini(const RunConfig& c);

}  // namespace sops
