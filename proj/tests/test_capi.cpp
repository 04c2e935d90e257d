#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "sops/sops.h"

namespace {

const char* kConfig =
    "setting = connected\nL = 11\nn = 10\nq = 3\nlambda = 4\ngamma = 2\nsteps = 5000\nseed = 2\n"
    "sample_interval = 1000\ninitial = line\n";

std::string take(char* s) {
  std::string out = s != nullptr ? s : "";
  sops_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("configuration handles") {
  sops_config* cfg = nullptr;
  REQUIRE(sops_config_parse(kConfig, &cfg) == SOPS_OK);
  CHECK(sops_config_validate(cfg) == SOPS_OK);
  char* value = nullptr;
  REQUIRE(sops_config_get(cfg, "lambda", &value) == SOPS_OK);
  CHECK(take(value) == "4");
  REQUIRE(sops_config_get(cfg, "outputs.metrics_csv", &value) == SOPS_OK);
  CHECK(value == nullptr);

  char* hash = nullptr;
  REQUIRE(sops_config_hash(cfg, &hash) == SOPS_OK);
  const std::string h = take(hash);
  CHECK(h.size() == 16);

  CHECK(sops_config_set(cfg, "gamma", "") == SOPS_OK);
  CHECK(sops_config_validate(cfg) == SOPS_VALIDATION);
  CHECK(std::strstr(sops_last_error(), "gamma") != nullptr);
  CHECK(sops_config_set(cfg, "no_such_key", "1") == SOPS_VALIDATION);
  CHECK(sops_config_set(cfg, "gamma", "2") == SOPS_OK);
  CHECK(sops_config_validate(cfg) == SOPS_OK);
  CHECK(*sops_last_error() == '\0');
  sops_config_free(cfg);

  CHECK(sops_config_parse(nullptr, &cfg) == SOPS_INVALID_ARGUMENT);
  CHECK(sops_config_load("/nonexistent/file.ini", &cfg) == SOPS_IO);
  sops_config_free(nullptr);
}

TEST_CASE("step-wise simulation") {
  sops_config* cfg = nullptr;
  REQUIRE(sops_config_parse(kConfig, &cfg) == SOPS_OK);
  sops_sim* a = nullptr;
  sops_sim* b = nullptr;
  REQUIRE(sops_sim_create(cfg, &a) == SOPS_OK);
  REQUIRE(sops_sim_create(cfg, &b) == SOPS_OK);
  CHECK(sops_sim_step(a, 3000) == SOPS_OK);
  CHECK(sops_sim_step(b, 1000) == SOPS_OK);
  CHECK(sops_sim_step(b, 2000) == SOPS_OK);
  sops_stats sa{}, sb{};
  REQUIRE(sops_sim_stats(a, &sa) == SOPS_OK);
  REQUIRE(sops_sim_stats(b, &sb) == SOPS_OK);
  CHECK(sa.steps == 3000);
  CHECK(sa.n == 10);
  CHECK(sa.accepted == sb.accepted);
  CHECK(sa.a == sb.a);
  char* row = nullptr;
  REQUIRE(sops_sim_metrics_csv_row(a, &row) == SOPS_OK);
  CHECK(take(row).rfind("3000,10,", 0) == 0);
  char* snap_a = nullptr;
  char* snap_b = nullptr;
  REQUIRE(sops_sim_snapshot_json(a, &snap_a) == SOPS_OK);
  REQUIRE(sops_sim_snapshot_json(b, &snap_b) == SOPS_OK);
  CHECK(take(snap_a) == take(snap_b));
  CHECK(sops_sim_stats(nullptr, &sa) == SOPS_INVALID_ARGUMENT);
  sops_sim_free(a);
  sops_sim_free(b);
  sops_config_free(cfg);
}

TEST_CASE("full run, render and checks") {
  const std::string dir = SOPS_TEST_TMP;
  sops_config* cfg = nullptr;
  REQUIRE(sops_config_parse(kConfig, &cfg) == SOPS_OK);
  REQUIRE(sops_config_set(cfg, "outputs.metrics_csv", (dir + "/capi.csv").c_str()) == SOPS_OK);
  REQUIRE(sops_config_set(cfg, "outputs.snapshot_json", (dir + "/capi.json").c_str()) == SOPS_OK);
  char* summary = nullptr;
  REQUIRE(sops_run(cfg, &summary) == SOPS_OK);
  const std::string s = take(summary);
  CHECK(s.find("\"compressed\"") != std::string::npos);
  CHECK(slurp(dir + "/capi.csv").find("step,n,a,h") != std::string::npos);

  CHECK(sops_render((dir + "/capi.json").c_str(), (dir + "/capi.svg").c_str(), 12.0) == SOPS_OK);
  CHECK(slurp(dir + "/capi.svg").find("<circle") != std::string::npos);
  CHECK(sops_render((dir + "/capi.json").c_str(), (dir + "/capi.svg").c_str(), 0.0) == SOPS_INVALID_ARGUMENT);

  char* report = nullptr;
  const std::string pair = "{\"metrics\": \"" + dir + "/capi.csv\", \"snapshot\": \"" + dir + "/capi.json\"}";
  CHECK(sops_check("pair", pair.c_str(), &report) == SOPS_OK);
  CHECK(take(report).find("config_hash_match") != std::string::npos);
  CHECK(sops_check("kp", "{\"gamma_factor\": 10}", &report) == SOPS_CHECK_FAILED);
  sops_string_free(report);
  CHECK(sops_check("kp", "not json", &report) == SOPS_VALIDATION);
  CHECK(sops_check("unknown", nullptr, &report) == SOPS_VALIDATION);

  char* csv = nullptr;
  CHECK(sops_sweep(cfg, "2,5", "1.5", "1..2", 2, nullptr, nullptr, &csv) == SOPS_OK);
  CHECK(take(csv).find("compressed") != std::string::npos);
  CHECK(sops_sweep(cfg, "2,x", "", "1", 1, nullptr, nullptr, &csv) == SOPS_VALIDATION);
  sops_config_free(cfg);
  CHECK(std::strlen(sops_version()) > 0);
}
