#ifndef FORKLESS_H
#define FORKLESS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  FORKLESS_PART_KIND_FINITE = 0,
  FORKLESS_PART_KIND_EMPTY = 1,
  FORKLESS_PART_KIND_BUDGET_EXCEEDED = 2,
} ForklessPartKind;

typedef enum {
  FORKLESS_STATUS_OK = 0,
  FORKLESS_STATUS_NULL_POINTER = 1,
  FORKLESS_STATUS_INVALID_ARGUMENT = 2,
  FORKLESS_STATUS_PARSE_ERROR = 3,
  FORKLESS_STATUS_OVERFLOW = 4,
  FORKLESS_STATUS_BUDGET_EXCEEDED = 5,
  FORKLESS_STATUS_PANIC = 6,
} ForklessStatus;

/**
 * Opaque quiver handle.
 */
typedef struct ForklessQuiver ForklessQuiver;

/**
 * Exploration limits. `max_depth == 0` means unlimited.
 */
typedef struct {
  size_t max_nodes;
  uint64_t max_arrow_weight;
  size_t max_depth;
} ForklessBudget;

/**
 * Summary of a forkless or pre-forkless part.
 */
typedef struct {
  ForklessPartKind kind;
  /**
   * Member count; 0 unless `kind` is `Finite`.
   */
  size_t count;
} ForklessPart;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. Valid until
 * the next call into this library from the same thread.
 */
const char *forkless_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void forkless_string_free(char *s);

/**
 * Default budget: 100000 nodes, weights up to 10^15, no depth limit.
 *
 * # Safety
 * `out` must be valid for writes.
 */
ForklessStatus forkless_budget_default(ForklessBudget *out);

/**
 * Builds a quiver from an `n * n` row-major skew-symmetric matrix.
 *
 * # Safety
 * `matrix` must point to `n * n` readable values; `out` must be valid for
 * writes.
 */
ForklessStatus forkless_quiver_new(size_t n, const int64_t *matrix, ForklessQuiver **out);

/**
 * Parses a quiver in the JSON or text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
ForklessStatus forkless_quiver_parse(const char *text, ForklessQuiver **out);

/**
 * Releases a quiver handle. NULL is ignored.
 *
 * # Safety
 * `q` must come from this library and not have been freed.
 */
void forkless_quiver_free(ForklessQuiver *q);

/**
 * # Safety
 * `q` must be a live handle; `out` must be valid for writes.
 */
ForklessStatus forkless_quiver_vertex_count(const ForklessQuiver *q, size_t *out);

/**
 * Signed multiplicity `q_ij`.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid for writes.
 */
ForklessStatus forkless_quiver_multiplicity(const ForklessQuiver *q,
                                            size_t i,
                                            size_t j,
                                            int64_t *out);

/**
 * Writes the mutation of `q` at `v` to a new handle.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid for writes.
 */
ForklessStatus forkless_quiver_mutate(const ForklessQuiver *q, size_t v, ForklessQuiver **out);

/**
 * Canonical JSON form of `q`.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid for writes.
 */
ForklessStatus forkless_quiver_to_json(const ForklessQuiver *q, char **out);

/**
 * Classification report as JSON.
 *
 * # Safety
 * `q` must be a live handle; `out` must be valid for writes.
 */
ForklessStatus forkless_classify_json(const ForklessQuiver *q, char **out);

/**
 * Forkless part of `q`. `budget` may be NULL for the default; either of
 * `summary` and `json` may be NULL. Returns `BudgetExceeded` (after
 * filling the outputs) when the budget runs out.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
ForklessStatus forkless_forkless_part(const ForklessQuiver *q,
                                      const ForklessBudget *budget,
                                      ForklessPart *summary,
                                      char **json);

/**
 * Pre-forkless part of `q`; same conventions as `forkless_forkless_part`.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
ForklessStatus forkless_preforkless_part(const ForklessQuiver *q,
                                         const ForklessBudget *budget,
                                         ForklessPart *summary,
                                         char **json);

/**
 * Mutation-finiteness verdict as JSON (`kind` is `finite`, `infinite` or
 * `unknown`).
 *
 * # Safety
 * `q` must be a live handle; `budget` NULL or valid; `out` valid for writes.
 */
ForklessStatus forkless_mutation_finiteness_json(const ForklessQuiver *q,
                                                 const ForklessBudget *budget,
                                                 char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FORKLESS_H */
