#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sops/types.hpp"

namespace sops {

// nu[m][q]: number of polymers with m support edges whose vertex set
// contains a fixed site, for 0 <= m <= max_edges and 0 <= q <= max_q
// (entries with m < 6 or q < 2 are zero).
struct PolymerCounts {
  int max_edges = 0;
  int max_q = 0;
  std::vector<std::vector<std::uint64_t>> nu;
  std::uint64_t supports_visited = 0;
};

inline constexpr int kPolymerEnumerationLimit = 12;

PolymerCounts count_polymers(int max_edges, int max_q);
std::uint64_t enumerate_polymers(int m, int q);

// Closed-form small-polymer counts used by the convergence certificate, m in [6, 15].
std::uint64_t nu_listed(int m, int q);

struct KpResult {
  bool holds = false;
  bool tail_converges = false;
  double value = 0.0;     // finite sum plus tail bound
  double bound = 0.0;     // c
  double residual = 0.0;  // value - bound
  double effective_gamma = 0.0;
  double tail_ratio = 0.0;
};

// Evaluates sum_{m=6}^{15} nu(m,q) x^m e^c + (e^c / 2) r^16 / (1 - r) with
// x = e^c / gamma and r = 6 (q-1) e^(1+c) / gamma. The clock model uses
// gamma^(1 - cos(2 pi / q)) in place of gamma.
KpResult kp_condition_check(double gamma, int q, Model model = Model::Potts, double c = 1e-4);

struct ThresholdEntry {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  std::string meaning;
};

struct ThresholdTable {
  std::vector<ThresholdEntry> entries;
  const ThresholdEntry& at(const std::string& name) const;
};

// Connected compression: lambda * gamma must exceed 7^(alpha / (alpha - 1)).
double compression_threshold(double alpha);
// Alternative bound (4 + 2 sqrt 2)^(alpha/(alpha-1)) e^(7c (alpha+1)/(alpha-1)).
double compression_threshold_cluster(double alpha, double c = 1e-4);
double alpha_star(double eta, int q);
double delta_star(double eta, int q);
// Logarithm of the alignment threshold on gamma.
double log_gamma_star(double eta, int q, double alpha);
double gamma_star(double eta, int q, double alpha);
// Right-hand side (1 - eps q/(q-1))^((q-1)/q - eps) (1 + eps q)^(1/q + eps).
double nonalignment_product(int q, double eps);
// gamma must stay below this value for the connected non-alignment statement.
double nonalignment_gamma_bound(int q, double eps);
// lambda must stay below this value for the general non-alignment statement.
double nonalignment_lambda_bound(int q, double eps);
inline constexpr double kExpansionC1 = 2.17;
double expansion_c2();
// Largest beta covered by the expansion statement; requires lambda gamma^(5/2) < c1.
double expansion_beta_bound(double lambda, double gamma);
double aggregation_lambda0(int q, double rho, double alpha, double delta);
double dispersion_lambda(double rho, double delta);
// Bridge-system tolerance used to build the aggregation region for target
// (alpha, delta) at density rho: half of
// min{1 - sqrt(1 - delta), 1 - 1/alpha'^2, rho (1 - (1 - x/3)^2)} with
// x = 1/sqrt(1 - eps) - 1, eps = 1 - sqrt(1 - delta), alpha' = min{alpha, 1 + x/3}.
double aggregation_bridge_delta(double rho, double alpha, double delta);

struct ThresholdInputs {
  int q = 2;
  double alpha = 2.0;
  double eta = 0.9;
  double eps = 0.1;
  double lambda = 0.8;
  double gamma = 1.0;
  double rho = 0.1;
  double delta = 0.01;
};
ThresholdTable thresholds(const ThresholdInputs& in);

}  // namespace sops
