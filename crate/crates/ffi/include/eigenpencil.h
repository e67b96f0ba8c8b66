#ifndef EIGENPENCIL_H
#define EIGENPENCIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call. Values match the command-line exit codes.
 */
typedef enum EpStatus {
  EP_STATUS_OK = 0,
  /**
   * Null pointer, invalid UTF-8 or an unusable argument.
   */
  EP_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed pencil or quadrics text.
   */
  EP_STATUS_FORMAT = 2,
  /**
   * Mathematical precondition failed (e.g. pencil not reduced, budget exceeded).
   */
  EP_STATUS_DOMAIN = 3,
  /**
   * Unexpected internal failure.
   */
  EP_STATUS_INTERNAL = 4,
} EpStatus;

/**
 * Opaque matrix pencil.
 */
typedef struct EpPencil EpPencil;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until the next
 * library call on the same thread.
 */
const char *ep_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void ep_string_free(char *s);

/**
 * # Safety
 * `p` must be NULL or a handle returned by this library, not yet freed.
 */
void ep_pencil_free(struct EpPencil *p);

/**
 * Parses the pencil text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum EpStatus ep_pencil_parse(const char *text, struct EpPencil **out);

/**
 * Renders a pencil in the canonical text format.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_pencil_to_text(const struct EpPencil *p, char **out);

/**
 * Number of matrices and the dimension vector `(a, b)`.
 *
 * # Safety
 * `p` must be a live handle; the output pointers must be writable.
 */
enum EpStatus ep_pencil_dims(const struct EpPencil *p, size_t *n, size_t *a, size_t *b);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_pencil_is_reduced(const struct EpPencil *p, bool *out);

/**
 * The canonical module for `n` variables over `field` (`"rational"` or `"gf<p>"`).
 *
 * # Safety
 * `field` must be a nul-terminated string; `out` must be writable.
 */
enum EpStatus ep_canonical(size_t n, const char *field, struct EpPencil **out);

/**
 * Realizes the zero set of a quadric system given in the quadrics text format.
 *
 * # Safety
 * `quadrics` must be a nul-terminated string; `out` must be writable.
 */
enum EpStatus ep_realize(const char *quadrics, struct EpPencil **out);

/**
 * All eigenvalues of a reduced pencil over a prime field, as point-set text.
 * A `budget` of 0 selects the default enumeration limit.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_eigenvalues(const struct EpPencil *p, uint64_t budget, char **out);

/**
 * The eigenvector variety of a reduced pencil over a prime field, as point-set text.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_eigenvectors(const struct EpPencil *p, uint64_t budget, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_sigma(const struct EpPencil *p, struct EpPencil **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_sigma_minus(const struct EpPencil *p, struct EpPencil **out);

/**
 * Square pencil with the same bristles, using every eigenvalue of a prime field.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum EpStatus ep_squareize(const struct EpPencil *p, uint64_t budget, struct EpPencil **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENPENCIL_H */
