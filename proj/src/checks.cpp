#include "sops/checks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "sops/errors.hpp"
#include "sops/exact.hpp"
#include "sops/observables.hpp"
#include "sops/output.hpp"
#include "sops/polymer.hpp"
#include "sops/theory.hpp"

namespace sops {

using nlohmann::json;

bool CheckReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const json& r) { return r.at("pass").get<bool>(); });
}

void CheckReport::add(const std::string& name, json inputs, json value, json bound, bool pass) {
  records.push_back({{"check_name", name}, {"inputs", std::move(inputs)}, {"value", std::move(value)},
                     {"bound", std::move(bound)}, {"pass", pass}});
}

namespace {

template <class T>
T param(const json& p, const char* key, T fallback) {
  if (!p.contains(key) || p.at(key).is_null()) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const json::exception&) {
    throw validation_error(std::string("field '") + key + "': wrong type");
  }
}

std::vector<int> int_list(const json& p, const char* key, std::vector<int> fallback) {
  if (!p.contains(key) || p.at(key).is_null()) return fallback;
  const json& v = p.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<int>>();
    return {v.get<int>()};
  } catch (const json::exception&) {
    throw validation_error(std::string("field '") + key + "': expected an integer or a list of integers");
  }
}

Model model_param(const json& p) {
  const auto m = parse_model(param<std::string>(p, "model", "potts"));
  if (!m) throw validation_error("field 'model': expected potts or clock");
  return *m;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

CheckReport kp_check(const json& p) {
  CheckReport rep;
  const Model model = model_param(p);
  const double c = param(p, "c", 1e-4);
  for (int q : int_list(p, "q", {2, 3, 4, 5})) {
    const double factor = param(p, "gamma_factor", 29.3);
    const double gamma = p.contains("gamma") ? param(p, "gamma", 0.0) : factor * (q - 1);
    const KpResult r = kp_condition_check(gamma, q, model, c);
    rep.add("kp_condition",
            {{"q", q}, {"gamma", gamma}, {"model", to_string(model)}, {"c", c}, {"effective_gamma", r.effective_gamma},
             {"tail_ratio", r.tail_ratio}, {"tail_converges", r.tail_converges}},
            finite_or_null(r.value), c, r.holds);
  }
  return rep;
}

CheckReport nu_check(const json& p) {
  CheckReport rep;
  const int max_m = param(p, "max_m", 12);
  const auto qs = int_list(p, "q", {2, 3, 4});
  const int max_q = *std::max_element(qs.begin(), qs.end());
  const PolymerCounts counts = count_polymers(max_m, std::max(2, max_q));
  for (int m = 1; m <= max_m; ++m)
    for (int q : qs) {
      const std::uint64_t found = counts.nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)];
      const std::uint64_t listed = m >= 6 ? nu_listed(m, q) : 0;
      rep.add("nu_listed_value", {{"m", m}, {"q", q}}, found, listed, found == listed);
      const double growth = std::pow(6.0 * std::numbers::e * (q - 1), m) / 2.0;
      rep.add("nu_growth_bound", {{"m", m}, {"q", q}}, found, growth, static_cast<double>(found) <= growth);
    }
  return rep;
}

CheckReport thresholds_check(const json& p) {
  ThresholdInputs in;
  in.q = param(p, "q", in.q);
  in.alpha = param(p, "alpha", in.alpha);
  in.eta = param(p, "eta", in.eta);
  in.eps = param(p, "eps", in.eps);
  in.lambda = param(p, "lambda", in.lambda);
  in.gamma = param(p, "gamma", in.gamma);
  in.rho = param(p, "rho", in.rho);
  in.delta = param(p, "delta", in.delta);
  CheckReport rep;
  for (const auto& e : thresholds(in).entries) {
    json inputs = json::object();
    for (const auto& [k, v] : e.inputs) inputs[k] = v;
    inputs["meaning"] = e.meaning;
    rep.add(e.name, std::move(inputs), finite_or_null(e.value), nullptr, std::isfinite(e.value) && e.value > 0);
  }
  return rep;
}

CheckReport isoperimetric_check(const json& p) {
  const auto max_n = param<std::int64_t>(p, "max_n", 1'000'000);
  const auto spiral_max = param<std::int64_t>(p, "spiral_max", 1000);
  if (max_n < 1 || spiral_max < 1) throw validation_error("field 'max_n'/'spiral_max': must be positive");
  CheckReport rep;
  double lower_margin = INFINITY, upper_margin = INFINITY;
  std::int64_t worst_lower = 1, worst_upper = 1;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    const auto pm = static_cast<double>(p_min_exact(n));
    const double lo = pm - (2.0 * std::sqrt(3.0) * std::sqrt(static_cast<double>(n) - 0.25) - 3.0);
    const double hi = 2.0 * std::sqrt(3.0) * std::sqrt(static_cast<double>(n)) - pm;
    if (lo < lower_margin) lower_margin = lo, worst_lower = n;
    if (hi < upper_margin) upper_margin = hi, worst_upper = n;
  }
  rep.add("isoperimetric_lower", {{"max_n", max_n}, {"worst_n", worst_lower}}, lower_margin, 0.0, lower_margin >= -1e-9);
  rep.add("isoperimetric_upper", {{"max_n", max_n}, {"worst_n", worst_upper}}, upper_margin, 0.0, upper_margin >= -1e-9);

  int side = 8;
  while (static_cast<std::int64_t>(side) * side <= 3 * spiral_max) side += 2;
  auto g = std::make_shared<const LatticeGeometry>(side);
  Configuration c(g, 2, Setting::General);
  std::int64_t mismatches = 0, first_mismatch = 0;
  const auto spiral = spiral_sites(*g, g->index({side / 2, side / 2}), spiral_max);
  for (std::int64_t m = 1; m <= spiral_max; ++m) {
    c.place(spiral[static_cast<std::size_t>(m - 1)], 0);
    const BdMin b = bd_min(m, g->site_count());
    if (static_cast<double>(c.stats().a) != b.value) {
      if (mismatches++ == 0) first_mismatch = m;
    }
  }
  rep.add("spiral_attains_bd_min", {{"spiral_max", spiral_max}, {"L", side}, {"first_mismatch", first_mismatch}},
          mismatches, 0, mismatches == 0);
  return rep;
}

CheckReport partition_check(const json& p) {
  const int q = param(p, "q", 2);
  const int radius = param(p, "radius", 1);
  const double lambda = param(p, "lambda", 2.0);
  const double gamma = param(p, "gamma", 4.0);
  const double tol = param(p, "tolerance", 1e-10);
  if (radius < 0 || radius > 3) throw validation_error("field 'radius': must lie in [0, 3]");
  if (q < 2 || q > 127) throw validation_error("field 'q': must lie in [2, 127]");
  CheckReport rep;
  std::vector<Model> models;
  if (p.contains("model"))
    models.push_back(model_param(p));
  else
    models = {Model::Potts, Model::Clock};
  const int side = 2 * radius + 7;
  auto g = std::make_shared<const LatticeGeometry>(side);
  Configuration shape(g, q, Setting::Connected);
  const std::int64_t sites = 1 + 3 * static_cast<std::int64_t>(radius) * (radius + 1);
  for (SiteIndex s : spiral_sites(*g, g->index({side / 2, side / 2}), sites)) shape.place(s, 0);
  for (Model m : models) {
    const PartitionIdentityResult r = polymer_partition_identity_check(shape, lambda, gamma, m, tol);
    rep.add("polymer_partition_identity",
            {{"q", q}, {"radius", radius}, {"lambda", lambda}, {"gamma", gamma}, {"model", to_string(m)},
             {"configurations", r.configurations}, {"polymers", r.polymers}, {"families", r.families},
             {"log_particle_side", r.log_particle_side}, {"log_polymer_side", r.log_polymer_side}},
            r.relative_error, tol, r.pass);
  }
  return rep;
}

CheckReport pair_check(const json& p) {
  const auto metrics = param<std::string>(p, "metrics", "");
  const auto snapshot = param<std::string>(p, "snapshot", "");
  if (metrics.empty() || snapshot.empty()) throw validation_error("field 'metrics'/'snapshot': both paths are required");
  const MetricsFileInfo info = read_metrics_info(metrics);
  const Snapshot snap = snapshot_from_json(read_text_file(snapshot));
  CheckReport rep;
  rep.add("config_hash_match", {{"metrics", metrics}, {"snapshot", snapshot}}, info.config_hash, snap.config_hash,
          !info.config_hash.empty() && info.config_hash == snap.config_hash);
  rep.add("final_step_match", {{"metrics", metrics}, {"snapshot", snapshot}},
          info.last_step ? json(*info.last_step) : json(nullptr), snap.step,
          info.last_step.has_value() && *info.last_step == snap.step);
  return rep;
}

CheckReport oracle_check(const json& p) {
  ChainParams cp;
  const auto setting = parse_setting(param<std::string>(p, "setting", "general"));
  if (!setting) throw validation_error("field 'setting': expected connected or general");
  cp.setting = *setting;
  cp.model = model_param(p);
  cp.q = param(p, "q", 2);
  cp.lambda = param(p, "lambda", 2.0);
  if (cp.setting == Setting::Connected) {
    if (!p.contains("gamma")) throw validation_error("field 'gamma': required in the connected setting");
    cp.gamma = param(p, "gamma", 1.0);
  } else if (p.contains("gamma")) {
    throw validation_error("field 'gamma': not allowed in the general setting");
  }
  const int side = param(p, "L", cp.setting == Setting::Connected ? 7 : 3);
  const int n = param(p, "n", 2);
  const auto steps = param<std::uint64_t>(p, "steps", 10'000'000);
  const auto burn_in = param<std::uint64_t>(p, "burn_in", 100'000);
  const auto seed = param<std::uint64_t>(p, "seed", 1);
  const double tv_bound = param(p, "tv_bound", cp.setting == Setting::Connected ? 0.02 : 0.01);
  const double tol = param(p, "balance_tolerance", 1e-12);

  const ExactStationary ex = exact_stationary(cp, side, n);
  json inputs{{"setting", to_string(cp.setting)}, {"model", to_string(cp.model)}, {"L", side}, {"n", n}, {"q", cp.q},
              {"lambda", cp.lambda}, {"states", ex.states.size()}};
  if (cp.setting == Setting::Connected) inputs["gamma"] = cp.gamma;
  CheckReport rep;
  rep.add("exact_stationarity_l1", inputs, ex.stationarity_l1, tol, ex.stationarity_l1 <= tol);
  rep.add("detailed_balance_max_relative", inputs, ex.detailed_balance_max_rel, tol, ex.detailed_balance_max_rel <= tol);
  rep.add("transition_row_sums", inputs, ex.row_sum_max_error, tol, ex.row_sum_max_error <= tol);
  if (steps > 0) {
    const EmpiricalComparison cmp = compare_empirical(ex, steps, burn_in, seed);
    json tv_inputs = inputs;
    tv_inputs["steps"] = steps;
    tv_inputs["burn_in"] = burn_in;
    tv_inputs["seed"] = seed;
    rep.add("empirical_total_variation", tv_inputs, cmp.total_variation, tv_bound, cmp.total_variation <= tv_bound);
  }
  return rep;
}

}  // namespace

CheckReport run_check(const std::string& name, const json& params) {
  const json& p = params.is_null() ? json::object() : params;
  if (!p.is_object()) throw validation_error("check parameters must be a JSON object");
  if (name == "kp") return kp_check(p);
  if (name == "nu") return nu_check(p);
  if (name == "thresholds") return thresholds_check(p);
  if (name == "isoperimetric") return isoperimetric_check(p);
  if (name == "partition") return partition_check(p);
  if (name == "pair") return pair_check(p);
  if (name == "oracle") return oracle_check(p);
  throw validation_error("unknown check '" + name + "'");
}

}  // namespace sops
