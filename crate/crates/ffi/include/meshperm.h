#ifndef MESHPERM_H
#define MESHPERM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible function.
 */
typedef enum MeshpermStatus {
  MESHPERM_STATUS_OK = 0,
  MESHPERM_STATUS_NULL_POINTER = 1,
  MESHPERM_STATUS_INVALID_UTF8 = 2,
  MESHPERM_STATUS_PARSE = 3,
  MESHPERM_STATUS_CAPACITY = 4,
  MESHPERM_STATUS_INVALID_INPUT = 5,
  MESHPERM_STATUS_NOT_FOUND = 6,
  MESHPERM_STATUS_INTERNAL = 7,
} MeshpermStatus;

/**
 * Opaque mesh pattern.
 */
typedef struct MeshpermPattern MeshpermPattern;

/**
 * Opaque joint distribution table.
 */
typedef struct MeshpermTable MeshpermTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *meshperm_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void meshperm_string_free(char *s);

/**
 * Parses `tau|c,r;c,r;...` into a new pattern handle.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out_pattern` must be writable.
 */
enum MeshpermStatus meshperm_pattern_parse(const char *text, struct MeshpermPattern **out_pattern);

/**
 * Canonical text of a pattern, to be released with `meshperm_string_free`.
 *
 * # Safety
 * `pattern` must be a live handle; `out_text` must be writable.
 */
enum MeshpermStatus meshperm_pattern_to_string(const struct MeshpermPattern *pattern,
                                               char **out_text);

/**
 * Releases a pattern handle. Null is ignored.
 *
 * # Safety
 * `pattern` must come from this library and not have been freed.
 */
void meshperm_pattern_free(struct MeshpermPattern *pattern);

/**
 * Looks up a catalog pair such as `"S9"` and returns new handles for both
 * of its patterns.
 *
 * # Safety
 * `id` must be a nul-terminated string; both out pointers must be writable.
 */
enum MeshpermStatus meshperm_catalog_pair(const char *id,
                                          struct MeshpermPattern **out_q1,
                                          struct MeshpermPattern **out_q2);

/**
 * Number of occurrences of `pattern` in the one-line permutation `perm`
 * (e.g. `"23154"`, or comma separated for n > 9).
 *
 * # Safety
 * `perm` must be a nul-terminated string; `pattern` a live handle;
 * `out_count` writable.
 */
enum MeshpermStatus meshperm_count(const char *perm,
                                   const struct MeshpermPattern *pattern,
                                   uint64_t *out_count);

/**
 * Joint distribution of `(q1, q2)` over all of S_n.
 *
 * # Safety
 * Both patterns must be live handles; `out_table` must be writable.
 */
enum MeshpermStatus meshperm_joint_table(size_t n,
                                         const struct MeshpermPattern *q1,
                                         const struct MeshpermPattern *q2,
                                         struct MeshpermTable **out_table);

/**
 * Number of rows and columns after trimming trailing zeros.
 *
 * # Safety
 * `table` must be a live handle; both out pointers must be writable.
 */
enum MeshpermStatus meshperm_table_dims(const struct MeshpermTable *table,
                                        size_t *out_rows,
                                        size_t *out_cols);

/**
 * Entry `T[k][l]`; zero outside the stored range.
 *
 * # Safety
 * `table` must be a live handle; `out_value` must be writable.
 */
enum MeshpermStatus meshperm_table_get(const struct MeshpermTable *table,
                                       size_t k,
                                       size_t l,
                                       uint64_t *out_value);

/**
 * Whether `T[k][l] == T[l][k]` for all cells.
 *
 * # Safety
 * `table` must be a live handle; `out_symmetric` must be writable.
 */
enum MeshpermStatus meshperm_table_is_symmetric(const struct MeshpermTable *table,
                                                bool *out_symmetric);

/**
 * The generating polynomial as text, e.g. `"x + y + 4"`, to be released
 * with `meshperm_string_free`.
 *
 * # Safety
 * `table` must be a live handle; `out_text` must be writable.
 */
enum MeshpermStatus meshperm_table_polynomial(const struct MeshpermTable *table, char **out_text);

/**
 * Releases a table handle. Null is ignored.
 *
 * # Safety
 * `table` must come from this library and not have been freed.
 */
void meshperm_table_free(struct MeshpermTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MESHPERM_H */
