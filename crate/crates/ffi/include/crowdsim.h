#ifndef CROWDSIM_H
#define CROWDSIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_ARGUMENT = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_PARSE_ERROR = 3,
  CS_STATUS_INVALID_SCENE = 4,
  CS_STATUS_CONFIG_ERROR = 5,
  CS_STATUS_SIMULATION_ERROR = 6,
  CS_STATUS_PANIC = 7,
} CsStatus;

/**
 * Finished run: result, density grid and summary.
 */
typedef struct CsResult CsResult;

/**
 * Parsed scene.
 */
typedef struct CsScene CsScene;

typedef struct CsSummary {
  double simulation_time_s;
  uint32_t agents_total;
  uint32_t agents_arrived;
  double distance_avg;
  double distance_max;
} CsSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static string.
 */
const char *cs_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Caller frees.
 */
char *cs_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void cs_string_free(char *s);

/**
 * Parses a scene document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CsStatus cs_scene_parse(const char *json, struct CsScene **out);

/**
 * # Safety
 * `scene` must be NULL or a handle from [`cs_scene_parse`], freed once.
 */
void cs_scene_free(struct CsScene *scene);

/**
 * Canonical scene JSON.
 *
 * # Safety
 * `scene` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_scene_to_json(const struct CsScene *scene, char **out);

/**
 * Total agents over all spawners; 0 for NULL, saturating at `UINT32_MAX`.
 *
 * # Safety
 * `scene` must be NULL or a live handle.
 */
uint32_t cs_scene_agent_count(const struct CsScene *scene);

/**
 * Validates against the default limits. Writes the report as JSON and
 * whether the scene can be simulated. Returns Ok even for invalid scenes.
 *
 * # Safety
 * `scene` must be a live handle; `report_json` and `runnable` writable.
 */
enum CsStatus cs_scene_validate(const struct CsScene *scene, char **report_json, bool *runnable);

/**
 * Runs a simulation. `config_json` may be NULL for defaults, or a JSON
 * object overriding individual fields (e.g. `{"seed": 7}`).
 *
 * # Safety
 * `scene` must be a live handle; `config_json` NULL or NUL-terminated;
 * `out` writable.
 */
enum CsStatus cs_simulate(const struct CsScene *scene,
                          const char *config_json,
                          struct CsResult **out);

/**
 * # Safety
 * `result` must be NULL or a handle from [`cs_simulate`], freed once.
 */
void cs_result_free(struct CsResult *result);

/**
 * # Safety
 * `result` must be a live handle; `out` writable.
 */
enum CsStatus cs_result_summary(const struct CsResult *result, struct CsSummary *out);

/**
 * Full result bundle as JSON, byte-identical to the CLI's result.json.
 *
 * # Safety
 * `result` must be a live handle; `out` writable.
 */
enum CsStatus cs_result_to_json(const struct CsResult *result, char **out);

/**
 * Trajectory CSV (`agent_id,step,x,y`).
 *
 * # Safety
 * `result` must be a live handle; `out` writable.
 */
enum CsStatus cs_result_trajectories_csv(const struct CsResult *result, char **out);

/**
 * Density grid as JSON (`cell_size`, `cols`, `rows`, `counts`).
 *
 * # Safety
 * `result` must be a live handle; `out` writable.
 */
enum CsStatus cs_result_density_json(const struct CsResult *result, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROWDSIM_H */
