/*
 * C interface to the multi-robot discrete-RRT planner.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an mrdrrt_status; on
 * anything other than MRDRRT_OK, mrdrrt_last_error() describes the failure
 * for the calling thread until its next API call. Strings returned through
 * char** out-parameters are allocated by the library and must be released
 * with mrdrrt_string_free.
 */
#ifndef MRDRRT_H
#define MRDRRT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MRDRRT_BUILDING)
#    define MRDRRT_API __declspec(dllexport)
#  else
#    define MRDRRT_API __declspec(dllimport)
#  endif
#else
#  define MRDRRT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mrdrrt_status {
  MRDRRT_OK = 0,
  MRDRRT_ERR_INVALID_ARGUMENT = 1,
  MRDRRT_ERR_IO = 2,
  MRDRRT_ERR_PARSE = 3,
  MRDRRT_ERR_INVALID_SCENARIO = 4,
  MRDRRT_ERR_ROADMAP_DISCONNECTED = 5,
  MRDRRT_ERR_PLAN_FAILED = 6,
  MRDRRT_ERR_VALIDATION_FAILED = 7,
  MRDRRT_ERR_INTERNAL = 8
} mrdrrt_status;

typedef enum mrdrrt_product_mode {
  MRDRRT_MODE_TENSOR = 0,
  MRDRRT_MODE_CARTESIAN = 1
} mrdrrt_product_mode;

typedef struct mrdrrt_scenario mrdrrt_scenario;
typedef struct mrdrrt_roadmaps mrdrrt_roadmaps;
typedef struct mrdrrt_plan mrdrrt_plan;

typedef struct mrdrrt_plan_options {
  uint64_t seed;
  uint32_t max_iterations;     /* main-loop iterations, default 30 */
  int mode;                    /* mrdrrt_product_mode */
  int fallback;                /* non-zero enables edge-exposure fallback */
  int64_t time_budget_ms;      /* <= 0: no wall-clock budget */
} mrdrrt_plan_options;

typedef struct mrdrrt_bench_options {
  uint64_t base_seed;
  uint32_t prm_n;
  uint32_t prm_k;
  mrdrrt_plan_options plan;    /* plan.seed is ignored; each run uses its own */
  int timing;                  /* zero writes "na" in the time columns */
} mrdrrt_bench_options;

MRDRRT_API const char* mrdrrt_version(void);
MRDRRT_API const char* mrdrrt_last_error(void);
MRDRRT_API const char* mrdrrt_status_string(mrdrrt_status status);
MRDRRT_API void mrdrrt_string_free(char* s);

/* Scenarios */
MRDRRT_API mrdrrt_status mrdrrt_scenario_load(const char* path,
                                              mrdrrt_scenario** out);
MRDRRT_API mrdrrt_status mrdrrt_scenario_parse(const char* json,
                                               mrdrrt_scenario** out);
MRDRRT_API void mrdrrt_scenario_free(mrdrrt_scenario* scenario);
MRDRRT_API size_t mrdrrt_scenario_robot_count(const mrdrrt_scenario* scenario);
MRDRRT_API const char* mrdrrt_scenario_name(const mrdrrt_scenario* scenario);

/* Roadmaps: one file roadmap_<i>.json per robot inside a directory. */
MRDRRT_API mrdrrt_status mrdrrt_roadmaps_build(const mrdrrt_scenario* scenario,
                                               size_t n, size_t k,
                                               uint64_t seed,
                                               mrdrrt_roadmaps** out);
MRDRRT_API mrdrrt_status mrdrrt_roadmaps_save(const mrdrrt_roadmaps* roadmaps,
                                              const char* dir);
MRDRRT_API mrdrrt_status mrdrrt_roadmaps_load(const mrdrrt_scenario* scenario,
                                              const char* dir,
                                              mrdrrt_roadmaps** out);
MRDRRT_API void mrdrrt_roadmaps_free(mrdrrt_roadmaps* roadmaps);
MRDRRT_API size_t mrdrrt_roadmaps_vertex_count(const mrdrrt_roadmaps* roadmaps,
                                               size_t robot);
MRDRRT_API double mrdrrt_roadmaps_build_ms(const mrdrrt_roadmaps* roadmaps);

/* Planning. *out is set whenever the search ran, including on
 * MRDRRT_ERR_PLAN_FAILED, so the run report is always available. */
MRDRRT_API void mrdrrt_plan_options_init(mrdrrt_plan_options* options);
MRDRRT_API mrdrrt_status mrdrrt_plan_run(const mrdrrt_scenario* scenario,
                                     const mrdrrt_roadmaps* roadmaps,
                                     const mrdrrt_plan_options* options,
                                     mrdrrt_plan** out);
MRDRRT_API void mrdrrt_plan_free(mrdrrt_plan* plan);
MRDRRT_API int mrdrrt_plan_succeeded(const mrdrrt_plan* plan);
MRDRRT_API size_t mrdrrt_plan_step_count(const mrdrrt_plan* plan);
MRDRRT_API mrdrrt_status mrdrrt_plan_to_json(const mrdrrt_plan* plan,
                                             char** json);
MRDRRT_API mrdrrt_status mrdrrt_plan_report_json(const mrdrrt_plan* plan,
                                                 char** json);

/* Validation of a plan file. Returns MRDRRT_OK for a valid plan and
 * MRDRRT_ERR_VALIDATION_FAILED otherwise; *report_json always receives the
 * violation report when the plan could be read. */
MRDRRT_API mrdrrt_status mrdrrt_validate_plan_file(
    const mrdrrt_scenario* scenario, const mrdrrt_roadmaps* roadmaps,
    const char* plan_path, char** report_json);

/* Rendering. plan_path may be NULL for a map-only picture. */
MRDRRT_API mrdrrt_status mrdrrt_render_svg(const mrdrrt_scenario* scenario,
                                           const char* plan_path,
                                           char** svg);

/* Benchmark over every *.json scenario in a directory. runs_json may be NULL;
 * otherwise it receives a JSON array with one run report per (scenario, seed),
 * including failed runs. */
MRDRRT_API void mrdrrt_bench_options_init(mrdrrt_bench_options* options);
MRDRRT_API mrdrrt_status mrdrrt_bench(const char* scenario_dir, size_t seeds,
                                      const mrdrrt_bench_options* options,
                                      char** csv, char** runs_json);

#ifdef __cplusplus
}
#endif

#endif /* MRDRRT_H */
