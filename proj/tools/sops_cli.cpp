#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "sops/sops.h"

namespace {

enum Exit { kSuccess = 0, kValidation = 1, kRuntime = 2, kCheckFailed = 3 };

int exit_code(sops_status s) {
  switch (s) {
    case SOPS_OK:
      return kSuccess;
    case SOPS_INVALID_ARGUMENT:
    case SOPS_VALIDATION:
      return kValidation;
    case SOPS_CHECK_FAILED:
      return kCheckFailed;
    default:
      return kRuntime;
  }
}

int report(sops_status s) {
  if (s != SOPS_OK && *sops_last_error() != '\0') std::cerr << "error: " << sops_last_error() << '\n';
  return exit_code(s);
}

// Owns a string handed out by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { sops_string_free(p); }
  void print(std::ostream& os) const {
    if (p != nullptr) os << p;
  }
};

struct ConfigHandle {
  sops_config* p = nullptr;
  ~ConfigHandle() { sops_config_free(p); }
};

sops_status load_config(const std::string& path, const std::vector<std::string>& overrides,
                        const std::vector<std::pair<std::string, std::string>>& flags, ConfigHandle& out) {
  sops_status s = sops_config_load(path.c_str(), &out.p);
  if (s != SOPS_OK) return s;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: override '" << o << "' is not of the form key=value\n";
      return SOPS_VALIDATION;
    }
    s = sops_config_set(out.p, o.substr(0, eq).c_str(), o.substr(eq + 1).c_str());
    if (s != SOPS_OK) return s;
  }
  for (const auto& [k, v] : flags)
    if (!v.empty() && (s = sops_config_set(out.p, k.c_str(), v.c_str())) != SOPS_OK) return s;
  return sops_config_validate(out.p);
}

// key=value pairs become a JSON object; values are read as JSON when they
// parse, otherwise as strings.
std::string params_json(const std::string& base, const std::vector<std::string>& pairs,
                        const std::vector<std::pair<std::string, std::string>>& extra) {
  nlohmann::json j = base.empty() ? nlohmann::json::object() : nlohmann::json::parse(base);
  auto put = [&](const std::string& k, const std::string& v) {
    const auto parsed = nlohmann::json::parse(v, nullptr, false);
    j[k] = parsed.is_discarded() ? nlohmann::json(v) : parsed;
  };
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected key=value, got '" + p + "'");
    put(p.substr(0, eq), p.substr(eq + 1));
  }
  for (const auto& [k, v] : extra)
    if (!v.empty()) put(k, v);
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verification toolkit for self-organizing particle systems on the triangular lattice"};
  app.set_version_flag("--version", std::string(sops_version()));
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one experiment from a configuration file");
  std::string run_config;
  std::vector<std::string> run_set;
  std::string run_metrics, run_snapshot, run_svg, run_steps, run_seed;
  run->add_option("config", run_config, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", run_set, "Override a key, e.g. --set classifiers.alpha=2");
  run->add_option("--metrics", run_metrics, "Metrics CSV path");
  run->add_option("--snapshot", run_snapshot, "Final snapshot JSON path");
  run->add_option("--svg", run_svg, "Final SVG rendering path");
  run->add_option("--steps", run_steps, "Number of activations");
  run->add_option("--seed", run_seed, "RNG seed");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run replicas over a lambda/gamma grid");
  std::string sweep_config, lambdas, gammas, seeds = "1", replica_dir, summary_path;
  std::vector<std::string> sweep_set;
  unsigned threads = 0;
  sweep->add_option("config", sweep_config, "Base configuration file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--lambdas", lambdas, "Comma-separated lambda values")->required();
  sweep->add_option("--gammas", gammas, "Comma-separated gamma values (connected setting)");
  sweep->add_option("--seeds", seeds, "Seeds, e.g. 1..10 or 3,5,8");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--replica-dir", replica_dir, "Directory for per-replica metrics CSVs");
  sweep->add_option("--summary", summary_path, "Summary CSV path (stdout when omitted)");
  sweep->add_option("--set", sweep_set, "Override a key of the base configuration");

  // render
  auto* render = app.add_subcommand("render", "Render a snapshot as SVG");
  std::string render_in, render_out;
  double scale = 20.0;
  render->add_option("snapshot", render_in, "Snapshot JSON")->required()->check(CLI::ExistingFile);
  render->add_option("-o,--output", render_out, "SVG output path")->required();
  render->add_option("--scale", scale, "Lattice spacing in SVG units")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "Numeric checks: kp, nu, thresholds, isoperimetric, partition, pair");
  std::string check_name, verify_params, verify_out, pair_metrics, pair_snapshot;
  std::vector<std::string> verify_pairs;
  verify->add_option("check", check_name, "Check name")
      ->required()
      ->check(CLI::IsMember({"kp", "nu", "thresholds", "isoperimetric", "partition", "pair"}));
  verify->add_option("--params", verify_params, "Parameters as a JSON object");
  verify->add_option("--param", verify_pairs, "Single parameter key=value (repeatable)");
  verify->add_option("--metrics", pair_metrics, "Metrics CSV (pair check)");
  verify->add_option("--snapshot", pair_snapshot, "Snapshot JSON (pair check)");
  verify->add_option("-o,--output", verify_out, "Write the JSON report here instead of stdout");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact stationary distribution versus an empirical run");
  std::string oracle_params, oracle_out;
  std::vector<std::string> oracle_pairs;
  oracle->add_option("--params", oracle_params, "Parameters as a JSON object");
  oracle->add_option("--param", oracle_pairs, "Single parameter key=value (repeatable)");
  oracle->add_option("-o,--output", oracle_out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }

  auto emit = [](const LibString& text, const std::string& path) -> int {
    if (path.empty()) {
      text.print(std::cout);
      std::cout << '\n';
      return kSuccess;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
      std::cerr << "error: cannot open " << path << '\n';
      return kRuntime;
    }
    if (text.p != nullptr) std::fputs(text.p, f);
    std::fputc('\n', f);
    return std::fclose(f) == 0 ? kSuccess : kRuntime;
  };

  try {
    if (*run) {
      ConfigHandle cfg;
      sops_status s = load_config(run_config, run_set,
                                  {{"outputs.metrics_csv", run_metrics},
                                   {"outputs.snapshot_json", run_snapshot},
                                   {"outputs.render_svg", run_svg},
                                   {"steps", run_steps},
                                   {"seed", run_seed}},
                                  cfg);
      if (s != SOPS_OK) return report(s);
      LibString summary;
      s = sops_run(cfg.p, &summary.p);
      if (s == SOPS_OK) summary.print(std::cout), std::cout << '\n';
      return report(s);
    }
    if (*sweep) {
      ConfigHandle cfg;
      sops_status s = load_config(sweep_config, sweep_set, {}, cfg);
      if (s != SOPS_OK) return report(s);
      LibString csv;
      s = sops_sweep(cfg.p, lambdas.c_str(), gammas.c_str(), seeds.c_str(), threads, replica_dir.c_str(),
                     summary_path.c_str(), &csv.p);
      if (summary_path.empty()) csv.print(std::cout);
      return report(s);
    }
    if (*render) return report(sops_render(render_in.c_str(), render_out.c_str(), scale));
    if (*verify || *oracle) {
      const bool is_oracle = oracle->parsed();
      const std::string params =
          is_oracle ? params_json(oracle_params, oracle_pairs, {})
                    : params_json(verify_params, verify_pairs, {{"metrics", pair_metrics}, {"snapshot", pair_snapshot}});
      LibString out;
      const sops_status s = sops_check(is_oracle ? "oracle" : check_name.c_str(), params.c_str(), &out.p);
      if (out.p != nullptr) {
        const int e = emit(out, is_oracle ? oracle_out : verify_out);
        if (e != kSuccess) return e;
      }
      return report(s);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: --params: " << e.what() << '\n';
    return kValidation;
  }
  return kSuccess;
}
