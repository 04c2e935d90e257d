#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sops/dynamics.hpp"

namespace sops {

// Exhaustive stationary distribution and one-step transition matrix of the
// chain on a small torus.
struct ExactStationary {
  int side = 0;
  int n = 0;
  ChainParams params;
  // Each state is the per-site orientation vector (kEmpty for vacant sites).
  std::vector<std::vector<std::int8_t>> states;
  std::vector<double> pi;
  // Sparse rows of P, self-loops included; each row sums to 1.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> transitions;
  double stationarity_l1 = 0.0;           // ||pi P - pi||_1
  double detailed_balance_max_abs = 0.0;  // max |pi_i P_ij - pi_j P_ji|
  double detailed_balance_max_rel = 0.0;  // same, relative to max(pi_i P_ij, pi_j P_ji)
  double row_sum_max_error = 0.0;

  // Index of a state, or -1.
  std::int64_t find(const std::vector<std::int8_t>& orientations) const;
  std::unordered_map<std::string, std::uint32_t> index;
};

inline constexpr std::uint64_t kExactStateBudget = 1'000'000;

// Enumerates every state with n particles: all n-subsets (connected setting:
// only simply connected ones) times all orientation assignments.
ExactStationary exact_stationary(const ChainParams& params, int side, int n,
                                 std::uint64_t state_budget = kExactStateBudget);

struct EmpiricalComparison {
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::vector<double> empirical;
  double total_variation = 0.0;
};

// Runs the chain from the first enumerated state and compares the visit
// histogram (one sample per step after burn-in) with the exact distribution.
EmpiricalComparison compare_empirical(const ExactStationary& exact, std::uint64_t steps, std::uint64_t burn_in,
                                      std::uint64_t seed);

}  // namespace sops
