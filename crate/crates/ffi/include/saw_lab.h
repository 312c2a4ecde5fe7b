#ifndef SAW_LAB_H
#define SAW_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum SawStatus {
  SAW_STATUS_OK = 0,
  SAW_STATUS_NULL_POINTER = 1,
  SAW_STATUS_INVALID_ARGUMENT = 2,
  SAW_STATUS_PARSE = 3,
  SAW_STATUS_GUARDRAIL = 4,
  SAW_STATUS_NOT_SELF_AVOIDING = 5,
  SAW_STATUS_INTERNAL = 6,
} SawStatus;

/**
 * Opaque walk handle.
 */
typedef struct SawWalk SawWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sawlab_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sawlab_string_free(char *s);

/**
 * Parses `d=<d>;origin=<c,...>;steps=<steps>` into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum SawStatus sawlab_walk_parse(const char *text, struct SawWalk **out);

/**
 * Releases a walk handle. Null is ignored.
 *
 * # Safety
 * `w` must come from this library and not have been freed.
 */
void sawlab_walk_free(struct SawWalk *w);

/**
 * Number of steps of `w`.
 *
 * # Safety
 * `w` must be a live handle and `out` writable.
 */
enum SawStatus sawlab_walk_len(const struct SawWalk *w, size_t *out);

/**
 * Text form of `w`, in the syntax accepted by [`sawlab_walk_parse`].
 *
 * # Safety
 * `w` must be a live handle and `out` writable.
 */
enum SawStatus sawlab_walk_serialize(const struct SawWalk *w, char **out);

/**
 * c_n, the number of n-step self-avoiding walks in Z^d, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum SawStatus sawlab_count_walks(size_t n, size_t d, char **out);

/**
 * p_n, the number of n-edge polygons up to translation, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum SawStatus sawlab_count_polygons(size_t n, size_t d, char **out);

/**
 * Probability that a uniform n-step walk closes, as a reduced fraction.
 *
 * # Safety
 * `num` and `den` must be writable.
 */
enum SawStatus sawlab_closing_probability(size_t n, size_t d, char **num, char **den);

/**
 * Splits `w` at its NE vertex into first and second parts, both starting at
 * the NE vertex. `origin_in_first` receives 1 when the first part holds the
 * walk's start.
 *
 * # Safety
 * `w` must be a live handle; the out pointers must be writable.
 */
enum SawStatus sawlab_decompose(const struct SawWalk *w,
                                struct SawWalk **first,
                                struct SawWalk **second,
                                int32_t *origin_in_first);

/**
 * `C(s1,k) C(s2,n_i-k) / C(s1+s2,n_i)` as a reduced fraction.
 *
 * # Safety
 * `num` and `den` must be writable.
 */
enum SawStatus sawlab_hypergeometric_pmf(uint64_t s1,
                                         uint64_t s2,
                                         uint64_t n_i,
                                         uint64_t k,
                                         char **num,
                                         char **den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SAW_LAB_H */
