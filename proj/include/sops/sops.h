#ifndef SOPS_SOPS_H
#define SOPS_SOPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SOPS_API __declspec(dllexport)
#else
#define SOPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sops_status {
  SOPS_OK = 0,
  SOPS_INVALID_ARGUMENT = 1,
  SOPS_VALIDATION = 2,
  SOPS_IO = 3,
  SOPS_DOMAIN = 4,
  SOPS_BUDGET = 5,
  SOPS_RUNTIME = 6,
  SOPS_CHECK_FAILED = 7
} sops_status;

typedef struct sops_config sops_config;
typedef struct sops_sim sops_sim;

typedef struct sops_stats {
  uint64_t steps;
  uint64_t accepted;
  int64_t n;
  int64_t a;
  int64_t h;
  double d_sum;
} sops_stats;

/* Library version string; static storage. */
SOPS_API const char* sops_version(void);

/* Message of the last failing call on this thread; empty after success. */
SOPS_API const char* sops_last_error(void);

/* Releases strings returned through char** out-parameters. */
SOPS_API void sops_string_free(char* s);

/* Configuration documents (key = value text with [classifiers] and [outputs] sections). */
SOPS_API sops_status sops_config_create(sops_config** out);
SOPS_API sops_status sops_config_load(const char* path, sops_config** out);
SOPS_API sops_status sops_config_parse(const char* text, sops_config** out);
/* An empty value removes the key. Section keys use dotted names, e.g. "classifiers.alpha". */
SOPS_API sops_status sops_config_set(sops_config* cfg, const char* key, const char* value);
/* *out is NULL when the key is unset. */
SOPS_API sops_status sops_config_get(const sops_config* cfg, const char* key, char** out);
SOPS_API sops_status sops_config_validate(const sops_config* cfg);
SOPS_API sops_status sops_config_hash(const sops_config* cfg, char** out);
SOPS_API void sops_config_free(sops_config* cfg);

/* Step-wise simulation handle. */
SOPS_API sops_status sops_sim_create(const sops_config* cfg, sops_sim** out);
SOPS_API sops_status sops_sim_step(sops_sim* sim, uint64_t steps);
SOPS_API sops_status sops_sim_stats(const sops_sim* sim, sops_stats* out);
SOPS_API sops_status sops_sim_metrics_csv_row(const sops_sim* sim, char** out);
SOPS_API sops_status sops_sim_snapshot_json(const sops_sim* sim, char** out);
SOPS_API void sops_sim_free(sops_sim* sim);

/* Full run writing the configured outputs; *summary_json (optional) receives
   the final classification. */
SOPS_API sops_status sops_run(const sops_config* cfg, char** summary_json);

/* Parameter sweep. Lists are comma-separated; gammas may be NULL or empty.
   Seeds accept ranges such as "1..10". threads = 0 uses all cores. The
   summary CSV is written to summary_path when it is non-NULL. Returns
   SOPS_RUNTIME when any replica failed (the summary is still produced). */
SOPS_API sops_status sops_sweep(const sops_config* cfg, const char* lambdas, const char* gammas, const char* seeds,
                                unsigned threads, const char* replica_dir, const char* summary_path,
                                char** summary_csv);

/* Renders a snapshot file to an SVG file. */
SOPS_API sops_status sops_render(const char* snapshot_path, const char* svg_path, double scale);

/* Runs a named check ("kp", "nu", "thresholds", "isoperimetric", "partition",
   "pair", "oracle") with JSON object parameters (NULL for defaults). The
   report is a JSON array of {check_name, inputs, value, bound, pass}.
   Returns SOPS_CHECK_FAILED when any record fails. */
SOPS_API sops_status sops_check(const char* name, const char* params_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif
