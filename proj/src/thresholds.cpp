#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sops/errors.hpp"
#include "sops/theory.hpp"

namespace sops {

KpResult kp_condition_check(double gamma, int q, Model model, double c) {
  if (q < 2) throw domain_error("q must be at least 2");
  if (!(gamma > 0) || !(c > 0)) throw domain_error("gamma and c must be positive");
  KpResult r;
  r.bound = c;
  r.effective_gamma = model == Model::Clock ? std::pow(gamma, 1.0 - std::cos(2.0 * std::numbers::pi / q)) : gamma;
  const double log_x = c - std::log(r.effective_gamma);
  r.tail_ratio = 6.0 * (q - 1) * std::exp(1.0 + c) / r.effective_gamma;
  if (!(r.tail_ratio < 1.0)) {
    r.tail_converges = false;
    r.value = std::numeric_limits<double>::infinity();
    r.residual = r.value;
    return r;
  }
  r.tail_converges = true;
  double finite = 0.0;
  for (int m = 6; m <= 15; ++m) finite += static_cast<double>(nu_listed(m, q)) * std::exp(m * log_x);
  const double tail = std::exp(c) / 2.0 * std::pow(r.tail_ratio, 16) / (1.0 - r.tail_ratio);
  r.value = std::exp(c) * finite + tail;
  r.residual = r.value - c;
  r.holds = r.value <= c;
  return r;
}

const ThresholdEntry& ThresholdTable::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw invalid_argument("no threshold named " + name);
}

double compression_threshold(double alpha) {
  if (!(alpha > 1)) throw domain_error("alpha must exceed 1");
  return std::exp(alpha / (alpha - 1.0) * std::log(7.0));
}

double compression_threshold_cluster(double alpha, double c) {
  if (!(alpha > 1)) throw domain_error("alpha must exceed 1");
  return std::exp(alpha / (alpha - 1.0) * std::log(4.0 + 2.0 * std::numbers::sqrt2) + 7.0 * c * (alpha + 1.0) / (alpha - 1.0));
}

double alpha_star(double eta, int q) {
  if (!(eta > 0.5 && eta < 1.0)) throw domain_error("eta must lie in (1/2, 1)");
  if (q < 2) throw domain_error("q must be at least 2");
  const double inv_q = 1.0 / q;
  return std::min(std::sqrt(eta) + std::sqrt(1.0 - eta), std::sqrt(inv_q) + std::sqrt(1.0 - inv_q));
}

double delta_star(double eta, int q) { return std::min(1.0 - eta, 1.0 / q); }

double log_gamma_star(double eta, int q, double alpha) {
  const double a_star = alpha_star(eta, q);
  if (!(alpha > 1 && alpha < a_star)) throw domain_error("alpha must lie in (1, alpha*)");
  const double gap = a_star - alpha;
  const double exponent3 = 2.0 * alpha / gap;
  const double exponent4 = 0.75 + (a_star - 1.0) / (2.0 * delta_star(eta, q) * gap);
  return (q - 1) * (exponent3 * std::log(3.0) + exponent4 * std::log(4.0));
}

double gamma_star(double eta, int q, double alpha) { return std::exp(log_gamma_star(eta, q, alpha)); }

double nonalignment_product(int q, double eps) {
  if (q < 2) throw domain_error("q must be at least 2");
  if (!(eps > 0 && eps < 1.0 / q)) throw domain_error("eps must lie in (0, 1/q)");
  const double qd = q;
  const double log_rhs = ((qd - 1.0) / qd - eps) * std::log1p(-eps * qd / (qd - 1.0)) + (1.0 / qd + eps) * std::log1p(eps * qd);
  return std::exp(log_rhs);
}

double nonalignment_gamma_bound(int q, double eps) { return std::cbrt(nonalignment_product(q, eps)); }

double nonalignment_lambda_bound(int q, double eps) { return std::pow(nonalignment_product(q, eps), 1.0 / 6.0); }

double expansion_c2() { return 2.0 + std::numbers::sqrt2; }

double expansion_beta_bound(double lambda, double gamma) {
  if (!(lambda > 0 && gamma > 0)) throw domain_error("lambda and gamma must be positive");
  const double lc1 = std::log(kExpansionC1);
  const double numerator = lc1 - std::log(lambda) - 2.5 * std::log(gamma);
  if (!(numerator > 0)) throw domain_error("expansion needs lambda * gamma^(5/2) < 2.17");
  return numerator / (std::log(expansion_c2()) - std::log(lambda) - std::log(gamma));
}

double aggregation_lambda0(int q, double rho, double alpha, double delta) {
  if (!(rho > 0 && rho < 1.0 / 3.0)) throw domain_error("rho must lie in (0, 1/3)");
  if (!(alpha > 1)) throw domain_error("alpha must exceed 1");
  if (!(delta > 0 && delta < std::min(rho, 1.0 - 1.0 / (alpha * alpha))))
    throw domain_error("delta must lie in (0, min{rho, 1 - 1/alpha^2})");
  const double log_inner = alpha * (1.0 + delta) / (2.0 * delta) * std::log(3.0 * (q + 1)) +
                           std::log(36.0) / (4.0 * std::sqrt(3.0 * rho));
  return std::exp(log_inner / (alpha - 1.0 / std::sqrt(1.0 - delta)));
}

double dispersion_lambda(double rho, double delta) {
  if (!(rho > 0 && rho < 1.0 / 3.0)) throw domain_error("rho must lie in (0, 1/3)");
  if (!(delta > 0 && delta < 1)) throw domain_error("delta must lie in (0, 1)");
  const double log_ratio = rho * std::log(1.0 / rho) - delta * (1.0 - std::log(delta));
  return std::exp(log_ratio / (3.0 * rho));
}

double aggregation_bridge_delta(double rho, double alpha, double delta) {
  if (!(rho > 0 && rho < 1.0 / 3.0)) throw domain_error("rho must lie in (0, 1/3)");
  if (!(alpha > 1)) throw domain_error("alpha must exceed 1");
  if (!(delta > 0 && delta < 1)) throw domain_error("delta must lie in (0, 1)");
  const double eps = 1.0 - std::sqrt(1.0 - delta);
  const double x = 1.0 / std::sqrt(1.0 - eps) - 1.0;
  const double alpha_p = std::min(alpha, 1.0 + x / 3.0);
  const double shrink = 1.0 - x / 3.0;
  return 0.5 * std::min({eps, 1.0 - 1.0 / (alpha_p * alpha_p), rho * (1.0 - shrink * shrink)});
}

ThresholdTable thresholds(const ThresholdInputs& in) {
  ThresholdTable t;
  auto add = [&](std::string name, std::vector<std::pair<std::string, double>> inputs, double value, std::string meaning) {
    t.entries.push_back({std::move(name), std::move(inputs), value, std::move(meaning)});
  };
  const double qd = in.q;
  add("compression_lambda_gamma", {{"alpha", in.alpha}}, compression_threshold(in.alpha),
      "lambda*gamma must exceed this for alpha-compression (connected)");
  add("compression_lambda_gamma_cluster", {{"alpha", in.alpha}}, compression_threshold_cluster(in.alpha),
      "cluster-expansion form of the compression bound");
  add("kp_gamma", {{"q", qd}}, 29.3 * (in.q - 1), "gamma above which the convergence certificate is claimed");
  add("alpha_star", {{"eta", in.eta}, {"q", qd}}, alpha_star(in.eta, in.q), "largest admissible alpha for alignment");
  add("delta_star", {{"eta", in.eta}, {"q", qd}}, delta_star(in.eta, in.q), "min{1-eta, 1/q}");
  const double a_star = alpha_star(in.eta, in.q);
  if (in.alpha > 1 && in.alpha < a_star)
    add("log_gamma_star", {{"eta", in.eta}, {"q", qd}, {"alpha", in.alpha}}, log_gamma_star(in.eta, in.q, in.alpha),
        "natural log of the gamma threshold for alignment");
  add("nonalignment_product", {{"q", qd}, {"eps", in.eps}}, nonalignment_product(in.q, in.eps),
      "gamma^3 (connected) or lambda^6 (general) must stay below this");
  add("nonalignment_gamma", {{"q", qd}, {"eps", in.eps}}, nonalignment_gamma_bound(in.q, in.eps),
      "gamma must stay below this for eps-non-alignment (connected)");
  add("nonalignment_lambda", {{"q", qd}, {"eps", in.eps}}, nonalignment_lambda_bound(in.q, in.eps),
      "lambda must stay below this for eps-non-alignment (general)");
  add("expansion_lambda_gamma52", {{"lambda", in.lambda}, {"gamma", in.gamma}},
      in.lambda * std::pow(in.gamma, 2.5), "must stay below c1 = 2.17 for expansion");
  if (in.lambda * std::pow(in.gamma, 2.5) < kExpansionC1)
    add("expansion_beta", {{"lambda", in.lambda}, {"gamma", in.gamma}}, expansion_beta_bound(in.lambda, in.gamma),
        "beta-expansion holds for beta below this");
  if (in.delta < std::min(in.rho, 1.0 - 1.0 / (in.alpha * in.alpha)))
    add("aggregation_lambda0", {{"q", qd}, {"rho", in.rho}, {"alpha", in.alpha}, {"delta", in.delta}},
        aggregation_lambda0(in.q, in.rho, in.alpha, in.delta), "lambda above which aggregation is claimed");
  add("aggregation_bridge_delta", {{"rho", in.rho}, {"alpha", in.alpha}, {"delta", in.delta}},
      aggregation_bridge_delta(in.rho, in.alpha, in.delta), "bridge-system tolerance used to build the aggregation region");
  add("dispersion_lambda", {{"rho", in.rho}, {"delta", in.delta}}, dispersion_lambda(in.rho, in.delta),
      "lambda below which no aggregated region exists");
  return t;
}

}  // namespace sops
