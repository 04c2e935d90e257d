#include "sops/sops.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "sops/checks.hpp"
#include "sops/errors.hpp"
#include "sops/experiment.hpp"
#include "sops/output.hpp"
#include "sops/run_config.hpp"

struct sops_config {
  sops::ConfigDocument doc;
};

struct sops_sim {
  sops::RunConfig config;
  sops::Chain chain;
};

namespace {

thread_local std::string last_error;

sops_status status_of(sops::ErrorKind kind) {
  switch (kind) {
    case sops::ErrorKind::InvalidArgument:
      return SOPS_INVALID_ARGUMENT;
    case sops::ErrorKind::Validation:
      return SOPS_VALIDATION;
    case sops::ErrorKind::Io:
      return SOPS_IO;
    case sops::ErrorKind::Domain:
      return SOPS_DOMAIN;
    case sops::ErrorKind::Budget:
      return SOPS_BUDGET;
    case sops::ErrorKind::Runtime:
      return SOPS_RUNTIME;
  }
  return SOPS_RUNTIME;
}

template <class F>
sops_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const sops::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SOPS_RUNTIME;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SOPS_RUNTIME;
  } catch (...) {
    last_error = "unknown failure";
    return SOPS_RUNTIME;
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw sops::invalid_argument(std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* sops_version(void) { return sops::kArtifactVersion; }

const char* sops_last_error(void) { return last_error.c_str(); }

void sops_string_free(char* s) { std::free(s); }

sops_status sops_config_create(sops_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sops_config{};
    return SOPS_OK;
  });
}

sops_status sops_config_load(const char* path, sops_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sops_config{sops::ConfigDocument::from_file(path)};
    return SOPS_OK;
  });
}

sops_status sops_config_parse(const char* text, sops_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new sops_config{sops::ConfigDocument::from_string(text)};
    return SOPS_OK;
  });
}

sops_status sops_config_set(sops_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    cfg->doc.set(key, value != nullptr ? value : "");
    return SOPS_OK;
  });
}

sops_status sops_config_get(const sops_config* cfg, const char* key, char** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(out, "out");
    const auto v = cfg->doc.get(key);
    *out = v ? dup_string(*v) : nullptr;
    return SOPS_OK;
  });
}

sops_status sops_config_validate(const sops_config* cfg) {
  return guarded([&] {
    require(cfg, "cfg");
    (void)cfg->doc.parse();
    return SOPS_OK;
  });
}

sops_status sops_config_hash(const sops_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup_string(sops::config_hash(cfg->doc.parse()));
    return SOPS_OK;
  });
}

void sops_config_free(sops_config* cfg) { delete cfg; }

sops_status sops_sim_create(const sops_config* cfg, sops_sim** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    sops::RunConfig rc = cfg->doc.parse();
    sops::Chain chain(sops::make_initial(rc), sops::chain_params(rc));
    *out = new sops_sim{std::move(rc), std::move(chain)};
    return SOPS_OK;
  });
}

sops_status sops_sim_step(sops_sim* sim, uint64_t steps) {
  return guarded([&] {
    require(sim, "sim");
    sim->chain.run(steps);
    return SOPS_OK;
  });
}

sops_status sops_sim_stats(const sops_sim* sim, sops_stats* out) {
  return guarded([&] {
    require(sim, "sim");
    require(out, "out");
    const auto& c = sim->chain.configuration();
    *out = sops_stats{sim->chain.steps_taken(), sim->chain.accepted(), c.n(), c.stats().a, c.stats().h, c.stats().d_sum};
    return SOPS_OK;
  });
}

sops_status sops_sim_metrics_csv_row(const sops_sim* sim, char** out) {
  return guarded([&] {
    require(sim, "sim");
    require(out, "out");
    const auto row = sops::measure(sim->chain.configuration(), sim->chain.steps_taken(), sim->config.classifiers);
    *out = dup_string(sops::metrics_row(row));
    return SOPS_OK;
  });
}

sops_status sops_sim_snapshot_json(const sops_sim* sim, char** out) {
  return guarded([&] {
    require(sim, "sim");
    require(out, "out");
    const auto snap =
        sops::make_snapshot(sim->chain.configuration(), sim->config, sim->chain.steps_taken(), sim->chain.accepted());
    *out = dup_string(sops::snapshot_to_json(snap));
    return SOPS_OK;
  });
}

void sops_sim_free(sops_sim* sim) { delete sim; }

sops_status sops_run(const sops_config* cfg, char** summary_json) {
  return guarded([&] {
    require(cfg, "cfg");
    const sops::RunConfig rc = cfg->doc.parse();
    const sops::RunResult r = sops::run_with_outputs(rc);
    if (summary_json != nullptr) {
      const auto& w = r.classification;
      nlohmann::json j{{"config_hash", r.config_hash}, {"steps", r.steps},        {"accepted", r.accepted},
                       {"samples", r.rows.size()},    {"window", w.window},       {"aligned", w.aligned},
                       {"nonaligned", w.nonaligned}};
      if (w.compressed) j["compressed"] = *w.compressed;
      if (w.expanded) j["expanded"] = *w.expanded;
      if (w.aggregated) j["aggregated"] = *w.aggregated;
      *summary_json = dup_string(j.dump());
    }
    return SOPS_OK;
  });
}

sops_status sops_sweep(const sops_config* cfg, const char* lambdas, const char* gammas, const char* seeds,
                       unsigned threads, const char* replica_dir, const char* summary_path, char** summary_csv) {
  return guarded([&] {
    require(cfg, "cfg");
    require(lambdas, "lambdas");
    require(seeds, "seeds");
    const sops::RunConfig base = cfg->doc.parse();
    const auto lambda_list = sops::parse_real_list("lambdas", lambdas);
    const auto gamma_list = sops::parse_real_list("gammas", gammas != nullptr ? gammas : "");
    const auto seed_list = sops::parse_seed_list("seeds", seeds);
    const sops::SweepSummary s =
        sops::run_sweep(base, lambda_list, gamma_list, seed_list, threads, replica_dir != nullptr ? replica_dir : "");
    const std::string csv = sops::sweep_summary_csv(s, seed_list);
    if (summary_path != nullptr && *summary_path != '\0') sops::write_text_file(summary_path, csv);
    if (summary_csv != nullptr) *summary_csv = dup_string(csv);
    if (s.any_failure) {
      last_error = "one or more sweep replicas failed";
      return SOPS_RUNTIME;
    }
    return SOPS_OK;
  });
}

sops_status sops_render(const char* snapshot_path, const char* svg_path, double scale) {
  return guarded([&] {
    require(snapshot_path, "snapshot_path");
    require(svg_path, "svg_path");
    if (!(scale > 0)) throw sops::invalid_argument("scale must be positive");
    const auto snap = sops::snapshot_from_json(sops::read_text_file(snapshot_path));
    sops::write_text_file(svg_path, sops::render_svg(snap, scale));
    return SOPS_OK;
  });
}

sops_status sops_check(const char* name, const char* params_json, char** report_json) {
  return guarded([&] {
    require(name, "name");
    nlohmann::json params = nlohmann::json::object();
    if (params_json != nullptr && *params_json != '\0') {
      try {
        params = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        throw sops::validation_error(std::string("check parameters: ") + e.what());
      }
    }
    const sops::CheckReport rep = sops::run_check(name, params);
    if (report_json != nullptr) *report_json = dup_string(rep.records.dump(2));
    if (!rep.pass()) {
      last_error = std::string("check '") + name + "' failed";
      return SOPS_CHECK_FAILED;
    }
    return SOPS_OK;
  });
}

}  // extern "C"
