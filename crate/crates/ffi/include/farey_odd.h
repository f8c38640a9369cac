#ifndef FAREY_ODD_H
#define FAREY_ODD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Largest `Q` accepted by counting calls.
#define FAREY_MAX_Q 100000

// How a window whose start sits exactly on the left end of `[α, β]` is
// treated.
typedef enum FareyEndpoints {
  FAREY_ENDPOINTS_CLOSED = 0,
  FAREY_ENDPOINTS_LEFT_OPEN = 1,
} FareyEndpoints;

typedef enum FareyParity {
  FAREY_PARITY_ODD = 0,
  FAREY_PARITY_EVEN = 1,
  FAREY_PARITY_ANY = 2,
} FareyParity;

typedef enum FareyStatus {
  FAREY_STATUS_OK = 0,
  FAREY_STATUS_NULL_POINTER = 1,
  FAREY_STATUS_INVALID_ARGUMENT = 2,
  FAREY_STATUS_CAP_EXCEEDED = 3,
  FAREY_STATUS_OUT_OF_REGIME = 4,
  FAREY_STATUS_PRECONDITION = 5,
  FAREY_STATUS_OVERFLOW = 6,
  FAREY_STATUS_PARSE = 7,
  FAREY_STATUS_INTERNAL = 8,
} FareyStatus;

// Certified enclosure of a limiting frequency.
typedef struct FareyEnclosure FareyEnclosure;

// Convex region of the unit square with exact rational vertices.
typedef struct FareyRegion FareyRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *farey_last_error(void);

// Forgets the last error message of this thread.
void farey_clear_error(void);

// Library version as a static NUL-terminated string.
const char *farey_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void farey_string_free(char *s);

// Number of fractions in `F_Q` (or `F_{Q,odd}` when `odd_only`).
//
// # Safety
// `out` must be valid for writes.
enum FareyStatus farey_count_fractions(uint64_t q, bool odd_only, uint64_t *out);

// Windows of `len + 1` consecutive fractions of `F_{Q,odd}` whose
// determinants equal `delta`. `windows` receives the number of windows
// inspected and may be NULL.
//
// # Safety
// `delta` must point to `len` values; `count` must be valid for writes;
// `windows` must be NULL or valid for writes.
enum FareyStatus farey_count_delta_tuples(uint64_t q,
                                          const uint64_t *delta,
                                          size_t len,
                                          bool cyclic,
                                          uint64_t *count,
                                          uint64_t *windows);

// Tile `T_{k_1,…,k_len}`; `len = 0` gives the Farey triangle.
//
// # Safety
// `ks` must point to `len` values; `out` must be valid for writes.
enum FareyStatus farey_region_tile(const uint64_t *ks, size_t len, struct FareyRegion **out);

// The explicit quadrangle for `m ≥ 4r + 2`, `1 ≤ i ≤ r`.
//
// # Safety
// `out` must be valid for writes.
enum FareyStatus farey_region_quadrangle(uint64_t m,
                                         uint64_t i,
                                         uint64_t r,
                                         struct FareyRegion **out);

// Image of a region lying in `T_k` under `(x, y) ↦ (y, k·y − x)`.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_image(const struct FareyRegion *r,
                                    uint64_t k,
                                    struct FareyRegion **out);

// # Safety
// `r` must be NULL or a region not yet freed.
void farey_region_free(struct FareyRegion *r);

// Area as a double.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_area(const struct FareyRegion *r, double *out);

// Exact area as `"p/q"`.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_area_string(const struct FareyRegion *r, char **out);

// Vertices, constraints and area as JSON.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_json(const struct FareyRegion *r, char **out);

// Number of polygon vertices (0 for an empty region).
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_vertex_count(const struct FareyRegion *r, size_t *out);

// Whether `(xn/xd, yn/yd)` satisfies every constraint, strictness included.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_region_contains(const struct FareyRegion *r,
                                       int64_t xn,
                                       int64_t xd,
                                       int64_t yn,
                                       int64_t yd,
                                       bool *out);

// Integer points `(a, b)` with `(a/Q, b/Q)` in the region and the given
// parities, coprime when `primitive`.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_count_lattice(const struct FareyRegion *r,
                                     uint64_t q,
                                     enum FareyParity x_parity,
                                     enum FareyParity y_parity,
                                     bool primitive,
                                     uint64_t *out);

// Primitive points additionally restricted to `b̄ ∈ I_a` for
// `I = [an/ad, bn/bd]`, `b·b̄ ≡ 1 (mod a)`.
//
// # Safety
// `r` must be a live region; `out` must be valid for writes.
enum FareyStatus farey_count_lattice_interval(const struct FareyRegion *r,
                                              uint64_t q,
                                              enum FareyParity x_parity,
                                              enum FareyParity y_parity,
                                              int64_t alpha_num,
                                              int64_t alpha_den,
                                              int64_t beta_num,
                                              int64_t beta_den,
                                              enum FareyEndpoints endpoints,
                                              uint64_t *out);

// Enclosure of the limiting frequency of `delta`, refined until its width
// is at most `tol_num/tol_den` or the label cutoff reaches `k_max`
// (0 keeps the default).
//
// # Safety
// `delta` must point to `len` values; `out` must be valid for writes.
enum FareyStatus farey_rho_odd(const uint64_t *delta,
                               size_t len,
                               int64_t tol_num,
                               int64_t tol_den,
                               uint64_t k_max,
                               struct FareyEnclosure **out);

// # Safety
// `e` must be NULL or an enclosure not yet freed.
void farey_enclosure_free(struct FareyEnclosure *e);

// Bounds rounded to doubles.
//
// # Safety
// `e` must be a live enclosure; `lo` and `hi` must be valid for writes.
enum FareyStatus farey_enclosure_bounds(const struct FareyEnclosure *e, double *lo, double *hi);

// Exact bounds as `"p/q"` strings.
//
// # Safety
// `e` must be a live enclosure; `lo` and `hi` must be valid for writes.
enum FareyStatus farey_enclosure_strings(const struct FareyEnclosure *e, char **lo, char **hi);

// Flags of an enclosure: whether it is a single point, whether it met the
// tolerance, and the label cutoff used. Any output may be NULL.
//
// # Safety
// `e` must be a live enclosure; non-NULL outputs must be valid for writes.
enum FareyStatus farey_enclosure_info(const struct FareyEnclosure *e,
                                      bool *exact,
                                      bool *converged,
                                      uint64_t *k_used);

// Compares the cyclic window count for `delta` at `Q` with the lattice
// point sum over its path families.
//
// # Safety
// `delta` must point to `len` values; `pass` must be valid for writes.
enum FareyStatus farey_verify_identity(uint64_t q, const uint64_t *delta, size_t len, bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAREY_ODD_H */
