#ifndef KNESER_DET_H
#define KNESER_DET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KneserStatus {
  KNESER_STATUS_OK = 0,
  KNESER_STATUS_INVALID_ARGUMENT = 1,
  KNESER_STATUS_NULL_POINTER = 2,
  KNESER_STATUS_BUDGET_EXCEEDED = 3,
  KNESER_STATUS_INTERNAL = 4,
  KNESER_STATUS_PANIC = 5,
} KneserStatus;

/**
 * Opaque family handle.
 */
typedef struct KneserFamily KneserFamily;

/**
 * Search limits. Zero in a field means "use the default" for `max_nodes`
 * and "no limit" for the others.
 */
typedef struct KneserBudget {
  uint64_t max_nodes;
  double max_seconds;
  uint32_t max_r;
} KneserBudget;

typedef struct KneserBounds {
  uint32_t lower;
  uint32_t upper;
  /**
   * Meaningful only when `has_exact` is set.
   */
  uint32_t exact;
  bool has_exact;
} KneserBounds;

typedef struct KneserCensus {
  uint64_t f;
  uint64_t cumulative;
  /**
   * Pairs left unclassified by the budget; non-zero means partial counts.
   */
  uint64_t unresolved;
} KneserCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a family from `num_sets * k` elements laid out set after set.
 * Instances with `n == 2k` are auxiliary, all others determining.
 *
 * # Safety
 * `elements` must point to `num_sets * k` readable values (it may be null
 * when `num_sets` is 0), and `out` must be writable.
 */
enum KneserStatus kneser_family_new(uint32_t n,
                                    uint32_t k,
                                    const uint32_t *elements,
                                    size_t num_sets,
                                    struct KneserFamily **out);

/**
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void kneser_family_free(struct KneserFamily *f);

/**
 * Number of sets; 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t kneser_family_len(const struct KneserFamily *f);

/**
 * # Safety
 * `f` must be null or a live handle.
 */
uint32_t kneser_family_n(const struct KneserFamily *f);

/**
 * # Safety
 * `f` must be null or a live handle.
 */
uint32_t kneser_family_k(const struct KneserFamily *f);

/**
 * Copies the sorted elements of set `index` into `out`, which must hold `k` values.
 *
 * # Safety
 * `f` must be a live handle and `out` must have room for `capacity` values.
 */
enum KneserStatus kneser_family_copy_set(const struct KneserFamily *f,
                                         size_t index,
                                         uint32_t *out,
                                         size_t capacity);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_family_is_determining(const struct KneserFamily *f, bool *out);

/**
 * Separation plus coverage of `[n]`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_family_is_auxiliary(const struct KneserFamily *f, bool *out);

/**
 * Lexicographically first pair of elements with equal signatures. `found` is
 * false when the family is determining.
 *
 * # Safety
 * `f` must be a live handle; `found`, `a` and `b` writable.
 */
enum KneserStatus kneser_family_first_unseparated_pair(const struct KneserFamily *f,
                                                       bool *found,
                                                       uint32_t *a,
                                                       uint32_t *b);

/**
 * One-line JSON record; free with [`kneser_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_family_to_json(const struct KneserFamily *f, char **out);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum KneserStatus kneser_family_from_json(const char *json, struct KneserFamily **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void kneser_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *kneser_last_error_message(void);

/**
 * Determining number of `K(n,k)`. Closed forms are used when they apply.
 * `budget` may be null. `witness` may be null; otherwise it receives a
 * minimum family, or null if none could be produced within budget.
 * Returns `BudgetExceeded` when the value itself is unresolved.
 *
 * # Safety
 * `value` must be writable; `witness` null or writable.
 */
enum KneserStatus kneser_det(uint32_t n,
                             uint32_t k,
                             const struct KneserBudget *budget,
                             uint32_t *value,
                             struct KneserFamily **witness);

/**
 * # Safety
 * `out` must be writable.
 */
enum KneserStatus kneser_bounds(uint32_t n, uint32_t k, struct KneserBounds *out);

/**
 * `r` sets of size `r` on `r(r+1)/2 + 1` points, pairwise meeting in one point.
 *
 * # Safety
 * `out` must be writable.
 */
enum KneserStatus kneser_construct_triangular(uint32_t r, struct KneserFamily **out);

/**
 * Auxiliary family of `K(2k,k)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KneserStatus kneser_construct_aux(uint32_t k, struct KneserFamily **out);

/**
 * Minimum determining family of `K(2k+1,k)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KneserStatus kneser_construct_det_odd(uint32_t k, struct KneserFamily **out);

/**
 * `K(n,k)` to `K(n+1,k)`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_extend_n(const struct KneserFamily *f, struct KneserFamily **out);

/**
 * `K(n+1,k)` to `K(n,k)`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_reduce_n(const struct KneserFamily *f, struct KneserFamily **out);

/**
 * `K(n,k)` to `K(n+1,k+1)`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum KneserStatus kneser_lift_nk(const struct KneserFamily *f, struct KneserFamily **out);

/**
 * `f(r)` and `F(r)`. A partial census still fills `out` and returns `BudgetExceeded`.
 *
 * # Safety
 * `budget` null or valid; `out` writable.
 */
enum KneserStatus kneser_census(uint32_t r,
                                const struct KneserBudget *budget,
                                struct KneserCensus *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNESER_DET_H */
