#ifndef DSMFUSE_H
#define DSMFUSE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DsmStatus {
  DSM_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DSM_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DSM_STATUS_INVALID_UTF8 = 2,
  /**
   * A JSON document or expression could not be parsed.
   */
  DSM_STATUS_PARSE = 3,
  /**
   * Input was well formed but violates a model or network rule.
   */
  DSM_STATUS_VALIDATION = 4,
  /**
   * The computation itself failed, e.g. impossible evidence.
   */
  DSM_STATUS_NUMERIC = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  DSM_STATUS_PANIC = 6,
} DsmStatus;

/**
 * A normalized mass function over a model.
 */
typedef struct DsmMass DsmMass;

/**
 * A frame of discernment with its hybrid model.
 */
typedef struct DsmModel DsmModel;

/**
 * A validated discrete Bayesian network.
 */
typedef struct DsmNetwork DsmNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 *
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *dsm_last_error(void);

/**
 * Library version as a static string.
 */
const char *dsm_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dsm_string_free(char *s);

/**
 * Builds a model from a frame document such as
 * `{"hypotheses":["A","B","C"],"empty":[["A","C"]]}`.
 *
 * # Safety
 * `frame_json` must be a NUL-terminated string; `out` must be writable.
 */
enum DsmStatus dsm_model_new(const char *frame_json, struct DsmModel **out);

/**
 * # Safety
 * `model` must come from [`dsm_model_new`] and not be used afterwards.
 */
void dsm_model_free(struct DsmModel *model);

/**
 * Number of hypotheses in the model's frame.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum DsmStatus dsm_model_size(const struct DsmModel *model, uintptr_t *out);

/**
 * DSm cardinality of an expression such as `"A&B|C"` under the model.
 *
 * # Safety
 * `model` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum DsmStatus dsm_model_cardinality(const struct DsmModel *model,
                                     const char *expr,
                                     uintptr_t *out);

/**
 * Enumeration report of the model as JSON (elements and cardinalities).
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum DsmStatus dsm_model_enumerate_json(const struct DsmModel *model, char **out);

/**
 * Builds a mass function from a bba document such as
 * `{"source":"S1","masses":[{"element":"A","value":0.6},{"element":["A","B"],"value":0.4}]}`.
 *
 * # Safety
 * `model` must be a live handle, `bba_json` NUL-terminated, `out` writable.
 */
enum DsmStatus dsm_mass_new(const struct DsmModel *model,
                            const char *bba_json,
                            struct DsmMass **out);

/**
 * # Safety
 * `mass` must come from this library and not be used afterwards.
 */
void dsm_mass_free(struct DsmMass *mass);

/**
 * Mass assigned to an expression (0 when it is not focal).
 *
 * # Safety
 * `mass` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum DsmStatus dsm_mass_value(const struct DsmMass *mass, const char *expr, double *out);

/**
 * Focal elements as a JSON bba document, full precision.
 *
 * # Safety
 * `mass` must be a live handle; `out` must be writable.
 */
enum DsmStatus dsm_mass_to_json(const struct DsmMass *mass, char **out);

/**
 * DSmC combination followed by PCR5; `out` receives the PCR5 masses.
 *
 * # Safety
 * `m1` and `m2` must be live handles on the same model; `out` writable.
 */
enum DsmStatus dsm_fuse(const struct DsmMass *m1, const struct DsmMass *m2, struct DsmMass **out);

/**
 * Pignistic probability of an expression.
 *
 * # Safety
 * `mass` must be a live handle, `expr` NUL-terminated, `out` writable.
 */
enum DsmStatus dsm_betp(const struct DsmMass *mass, const char *expr, double *out);

/**
 * Full fusion report (DSmC, PCR5 and conflict log) as JSON.
 *
 * # Safety
 * All string arguments must be NUL-terminated; `out` must be writable.
 */
enum DsmStatus dsm_fuse_report_json(const char *frame_json,
                                    const char *bba1_json,
                                    const char *bba2_json,
                                    char **out);

/**
 * Runs a pipeline config file and returns the report as JSON.
 *
 * Relative paths inside the config resolve against its directory.
 *
 * # Safety
 * `config_path` must be NUL-terminated; `out` must be writable.
 */
enum DsmStatus dsm_pipeline_report_json(const char *config_path, char **out);

/**
 * Validates a network document and returns a handle.
 *
 * # Safety
 * `network_json` must be NUL-terminated; `out` must be writable.
 */
enum DsmStatus dsm_network_new(const char *network_json, struct DsmNetwork **out);

/**
 * # Safety
 * `network` must come from [`dsm_network_new`] and not be used afterwards.
 */
void dsm_network_free(struct DsmNetwork *network);

/**
 * Posterior marginals as JSON. `evidence_json` may be NULL for no evidence,
 * otherwise `{"hard":{"node":"state"},"soft":{"node":[...]}}`.
 *
 * # Safety
 * `network` must be a live handle, `evidence_json` NULL or NUL-terminated,
 * `out` writable.
 */
enum DsmStatus dsm_network_infer_json(const struct DsmNetwork *network,
                                      const char *evidence_json,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DSMFUSE_H */
