#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "sops/configuration.hpp"
#include "sops/rng.hpp"
#include "sops/types.hpp"

namespace sops {

struct ChainParams {
  int q = 2;
  double lambda = 1.0;
  double gamma = 1.0;  // unused in the general setting
  Model model = Model::Potts;
  Setting setting = Setting::Connected;
  std::uint64_t seed = 0;

  void validate() const;
};

// Validity of a spatial move in the connected setting, evaluated directly
// from the neighborhood definition with explicit searches.
bool is_valid_spatial_reference(const Configuration& c, SiteIndex from, SiteIndex to);

// Occupancy of the eight sites surrounding the pair (from, from + dir),
// listed counter-clockwise starting at the target's clockwise-most neighbor.
unsigned ring_mask(const Configuration& c, SiteIndex from, int dir);

// Table-driven equivalent of is_valid_spatial_reference.
bool is_valid_spatial(const Configuration& c, SiteIndex from, SiteIndex to);

// Raw table lookup: validity of a move in direction `dir` given the ring mask
// (target assumed empty).
bool ring_move_valid(int dir, unsigned mask);

Move propose(const Configuration& c, Rng& rng);

// Log of the stationary weight ratio pi(after) / pi(before).
double log_weight_ratio(const LocalDelta& d, const ChainParams& p);

// Metropolis acceptance probability; throws if the move is not valid.
double acceptance_probability(const Configuration& c, const Move& m, const ChainParams& p);

// True when the move may be applied under the setting's constraints.
bool move_allowed(const Configuration& c, const Move& m);

class Chain {
 public:
  using Observer = std::function<void(std::uint64_t step, const Configuration&)>;

  Chain(Configuration initial, const ChainParams& params);

  // One activation; returns whether the configuration changed.
  bool step();
  // Executes `steps` activations. The observer sees the state before the
  // first step (when no steps have been taken yet), after every multiple of
  // `interval`, and at the end.
  void run(std::uint64_t steps, std::uint64_t interval = 0, const Observer& observer = {});

  const Configuration& configuration() const { return config_; }
  Configuration& configuration() { return config_; }
  const ChainParams& params() const { return params_; }
  std::uint64_t steps_taken() const { return steps_; }
  std::uint64_t accepted() const { return accepted_; }
  Rng& rng() { return rng_; }

 private:
  bool accept(const LocalDelta& d);

  Configuration config_;
  ChainParams params_;
  Rng rng_;
  double log_lambda_;
  double log_gamma_;
  double log_lambda_gamma_;
  std::uint64_t steps_ = 0;
  std::uint64_t accepted_ = 0;
};

}  // namespace sops
