/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CYCLIC_WONDERFUL_H
#define CYCLIC_WONDERFUL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_NULL_POINTER = 1,
  CW_STATUS_INVALID_ARGUMENT = 2,
  CW_STATUS_PARSE = 3,
  CW_STATUS_FEASIBILITY = 4,
  CW_STATUS_NOT_FOUND = 5,
  CW_STATUS_BUFFER_TOO_SMALL = 6,
  CW_STATUS_INTERNAL = 7,
} CwStatus;

/**
 * A complete fan built from the maximal building set.
 */
typedef struct CwFan CwFan;

/**
 * The normal complex of the maximal building set.
 */
typedef struct CwNormalComplex CwNormalComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *cw_last_error_message(void);

/**
 * Static version string.
 */
const char *cw_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cw_string_free(char *s);

/**
 * Builds the fan of the maximal building set, directly or by stellar
 * subdivision when `via_stellar` is nonzero.
 *
 * # Safety
 * `out` must be a valid pointer. The handle is released with [`cw_fan_free`].
 */
enum CwStatus cw_fan_build(uint32_t r, size_t n, int32_t via_stellar, struct CwFan **out);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CwStatus cw_fan_from_json(const char *json, struct CwFan **out);

/**
 * # Safety
 * `fan` must be null or a handle from this library, freed once.
 */
void cw_fan_free(struct CwFan *fan);

/**
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum CwStatus cw_fan_ray_count(const struct CwFan *fan, size_t *out);

/**
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum CwStatus cw_fan_maximal_cone_count(const struct CwFan *fan, size_t *out);

/**
 * JSON encoding of the fan; free the result with [`cw_string_free`].
 *
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum CwStatus cw_fan_to_json(const struct CwFan *fan, char **out);

/**
 * Chain of the smallest cone containing `point` (text such as
 * `"(1,-1/2)"`). Returns `CW_STATUS_NOT_FOUND` when the point lies outside
 * the support.
 *
 * # Safety
 * `fan` must be a live handle, `point` a nul-terminated string and `out` a
 * valid pointer.
 */
enum CwStatus cw_fan_locate_point(const struct CwFan *fan, const char *point, char **out);

/**
 * Betti numbers b_0..b_{n} from the closed form. `len` receives the number
 * of entries even when the buffer is too small.
 *
 * # Safety
 * `buf` must hold `capacity` entries and `len` must be a valid pointer.
 */
enum CwStatus cw_betti_closed_form(uint32_t r,
                                   size_t n,
                                   uint64_t *buf,
                                   size_t capacity,
                                   size_t *len);

/**
 * Betti numbers computed by linear algebra on the presentation. Subject to
 * the feasibility guard.
 *
 * # Safety
 * `buf` must hold `capacity` entries and `len` must be a valid pointer.
 */
enum CwStatus cw_betti_oracle(uint32_t r, size_t n, uint64_t *buf, size_t capacity, size_t *len);

/**
 * Combinatorial type of a tropical curve written `i:spoke:length,...`.
 *
 * # Safety
 * `curve` must be a nul-terminated string and `out` a valid pointer.
 */
enum CwStatus cw_locate_curve(uint32_t r, size_t n, const char *curve, char **out);

/**
 * Sets `out` to 1 if the point lies in the normal complex region, else 0.
 *
 * # Safety
 * `point` must be a nul-terminated string and `out` a valid pointer.
 */
enum CwStatus cw_in_delta(uint32_t r, size_t n, const char *point, int32_t *out);

/**
 * # Safety
 * `out` must be a valid pointer. The handle is released with
 * [`cw_normal_complex_free`].
 */
enum CwStatus cw_normal_complex_build(uint32_t r, size_t n, struct CwNormalComplex **out);

/**
 * # Safety
 * `complex` must be null or a handle from this library, freed once.
 */
void cw_normal_complex_free(struct CwNormalComplex *complex);

/**
 * # Safety
 * `complex` must be a live handle and `out` a valid pointer.
 */
enum CwStatus cw_normal_complex_cell_count(const struct CwNormalComplex *complex, size_t *out);

/**
 * JSON with every cell's H- and V-representation; rationals are `"p/q"`
 * strings. Free the result with [`cw_string_free`].
 *
 * # Safety
 * `complex` must be a live handle and `out` a valid pointer.
 */
enum CwStatus cw_normal_complex_to_json(const struct CwNormalComplex *complex, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLIC_WONDERFUL_H */
