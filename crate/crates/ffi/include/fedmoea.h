#ifndef FEDMOEA_H
#define FEDMOEA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum FmStatus {
  FM_STATUS_OK = 0,
  FM_STATUS_NULL_POINTER = 1,
  FM_STATUS_INVALID_ARGUMENT = 2,
  FM_STATUS_DIMENSION_MISMATCH = 3,
  FM_STATUS_OUT_OF_BOUNDS = 4,
  FM_STATUS_PARSE = 5,
  FM_STATUS_IO = 6,
  FM_STATUS_INTERNAL = 7,
} FmStatus;

// Experiment settings, initialized to the defaults.
typedef struct FmConfig FmConfig;

// A radial-basis-function network.
typedef struct FmModel FmModel;

// A DTLZ benchmark instance.
typedef struct FmProblem FmProblem;

// Outcome of `fm_run_experiment`.
typedef struct FmResult FmResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library; valid until the next call on the same thread.
const char *fm_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void fm_string_free(char *s);

// Creates a benchmark from its name (`"dtlz1"` .. `"dtlz7"`).
//
// # Safety
// `name` must be a nul-terminated string and `out` a valid pointer.
enum FmStatus fm_problem_new(const char *name,
                             size_t objectives,
                             size_t dims,
                             struct FmProblem **out);

// Writes the `objectives` values of `x` (length `dims`, inside `[0, 1]`) to `out`.
//
// # Safety
// Pointers must be valid for the given lengths.
enum FmStatus fm_problem_evaluate(const struct FmProblem *problem,
                                  const double *x,
                                  size_t x_len,
                                  double *out,
                                  size_t out_len);

// # Safety
// `problem` must be a live handle or NULL.
void fm_problem_free(struct FmProblem *problem);

// Parses a model from `{"centers", "spreads", "weights", "biases"}` JSON.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum FmStatus fm_model_from_json(const char *json, struct FmModel **out);

// Serializes a model; release the string with `fm_string_free`.
//
// # Safety
// `model` must be a live handle and `out` a valid pointer.
enum FmStatus fm_model_to_json(const struct FmModel *model, char **out);

// Number of centers, input dimension and output dimension.
//
// # Safety
// `model` must be a live handle; the out pointers must be valid.
enum FmStatus fm_model_shape(const struct FmModel *model,
                             size_t *centers,
                             size_t *inputs,
                             size_t *outputs);

// # Safety
// Pointers must be valid for the given lengths.
enum FmStatus fm_model_predict(const struct FmModel *model,
                               const double *x,
                               size_t x_len,
                               double *out,
                               size_t out_len);

// # Safety
// `model` must be a live handle or NULL.
void fm_model_free(struct FmModel *model);

// Default settings for the named problem.
//
// # Safety
// `problem` must be a nul-terminated string and `out` a valid pointer.
enum FmStatus fm_config_new(const char *problem,
                            size_t objectives,
                            size_t dims,
                            struct FmConfig **out);

// Sets one setting by name, with the same keys as the config file format.
//
// # Safety
// `config` must be a live handle; `key` and `value` nul-terminated strings.
enum FmStatus fm_config_set(struct FmConfig *config, const char *key, const char *value);

// # Safety
// `config` must be a live handle or NULL.
void fm_config_free(struct FmConfig *config);

// Validates the settings and runs every repetition.
//
// # Safety
// `config` must be a live handle and `out` a valid pointer.
enum FmStatus fm_run_experiment(const struct FmConfig *config, struct FmResult **out);

// Number of runs in the result; 0 for NULL.
//
// # Safety
// `result` must be a live handle or NULL.
size_t fm_result_runs(const struct FmResult *result);

// Mean and sample standard deviation of the final IGD over runs.
//
// # Safety
// `result` must be a live handle; the out pointers must be valid.
enum FmStatus fm_result_summary(const struct FmResult *result, double *mean, double *std);

// Final IGD of run `run`.
//
// # Safety
// `result` must be a live handle and `out` a valid pointer.
enum FmStatus fm_result_final_igd(const struct FmResult *result, size_t run, double *out);

// Convergence records as CSV (`run,iter,fes,igd,ms`); release with `fm_string_free`.
//
// # Safety
// `result` must be a live handle and `out` a valid pointer.
enum FmStatus fm_result_records_csv(const struct FmResult *result, char **out);

// # Safety
// `result` must be a live handle or NULL.
void fm_result_free(struct FmResult *result);

// Inverted generational distance of `n_solutions` points against
// `n_reference` points, both row-major with `objectives` columns.
//
// # Safety
// Pointers must be valid for the given sizes.
enum FmStatus fm_igd(const double *solutions,
                     size_t n_solutions,
                     const double *reference,
                     size_t n_reference,
                     size_t objectives,
                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FEDMOEA_H */
