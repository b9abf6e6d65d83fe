#ifndef KXCOUNT_H
#define KXCOUNT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  KX_HILBERT_METHOD_KRONECKER = 0,
  KX_HILBERT_METHOD_COVERINGS = 1,
  KX_HILBERT_METHOD_CUSPIDAL = 2,
} KxHilbertMethod;

typedef enum {
  KX_STATUS_OK = 0,
  KX_STATUS_INVALID_INPUT = 1,
  KX_STATUS_CAP_EXCEEDED = 2,
  KX_STATUS_CONSISTENCY_FAILURE = 3,
  KX_STATUS_NULL_POINTER = 4,
  KX_STATUS_PANIC = 5,
} KxStatus;

typedef struct KxGraph KxGraph;

typedef struct KxLimits KxLimits;

typedef struct KxSeries KxSeries;

typedef struct KxTuple KxTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *kx_version(void);

/*
 Copies the calling thread's last error message into `buf` (NUL-terminated,
 truncated to `len`). Returns the full message length.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t kx_last_error(char *buf, size_t len);

/*
 Default caps. Free with `kx_limits_free`.
 */
KxLimits *kx_limits_new(void);

/*
 # Safety
 `limits` must be null or a handle from `kx_limits_new` not yet freed.
 */
void kx_limits_free(KxLimits *limits);

/*
 Sets the degree cap of exhaustive searches, of transitive enumeration and of the oracle.

 # Safety
 `limits` must be a live handle.
 */
KxStatus kx_limits_set_max_degree(KxLimits *limits, size_t n);

/*
 # Safety
 `limits` must be a live handle.
 */
KxStatus kx_limits_set_group_order_cap(KxLimits *limits, size_t cap);

/*
 Parses a graph from JSON. Malformed JSON fails; an adequacy violation does
 not (see `kx_graph_violation_count`).

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
KxStatus kx_graph_from_json(const char *json, KxGraph **out);

/*
 # Safety
 `graph` must be null or a live graph handle.
 */
void kx_graph_free(KxGraph *graph);

/*
 # Safety
 `graph` must be a live handle; `out` writable.
 */
KxStatus kx_graph_num_vertices(const KxGraph *graph, size_t *out);

/*
 Number of adequacy violations; zero for a valid graph.

 # Safety
 `graph` must be a live handle; `out` writable.
 */
KxStatus kx_graph_violation_count(const KxGraph *graph, size_t *out);

/*
 The irreducible base of a connected graph, as a new handle.

 # Safety
 `graph` must be a live handle; `out` writable.
 */
KxStatus kx_graph_minimize(const KxGraph *graph, KxGraph **out);

/*
 # Safety
 `graph` must be a live handle, `limits` null or live; `out` writable.
 */
KxStatus kx_graph_deck_order(const KxGraph *graph, const KxLimits *limits, size_t *out);

/*
 Whether two connected graphs are isomorphic.

 # Safety
 Both graphs must be live handles; `out` writable.
 */
KxStatus kx_graph_isomorphic(const KxGraph *a, const KxGraph *b, bool *out);

/*
 The graph as JSON. Free the string with `kx_string_free`.

 # Safety
 `graph` must be a live handle; `out` writable.
 */
KxStatus kx_graph_to_json(const KxGraph *graph, char **out);

/*
 # Safety
 `s` must be null or a string returned by this library.
 */
void kx_string_free(char *s);

/*
 A tuple of `rank` permutations of `{0..degree-1}`; `images` holds
 `rank * degree` entries, one permutation after another.

 # Safety
 `images` must point to `rank * degree` readable values; `out` writable.
 */
KxStatus kx_tuple_new(size_t degree, size_t rank, const size_t *images, KxTuple **out);

/*
 # Safety
 `tuple` must be null or a live tuple handle.
 */
void kx_tuple_free(KxTuple *tuple);

/*
 Copies the images, as in `kx_tuple_new`, into `buf` of length `len`.

 # Safety
 `tuple` must be live; `buf` must have `len` writable slots.
 */
KxStatus kx_tuple_images(const KxTuple *tuple, size_t *buf, size_t len);

/*
 The canonical representative of the tuple's conjugacy class, as a new handle.

 # Safety
 `tuple` must be live; `out` writable.
 */
KxStatus kx_tuple_canonical(const KxTuple *tuple, KxTuple **out);

/*
 `‖Γ‖²`: the order of the centralizer of the tuple.

 # Safety
 `tuple` must be live, `limits` null or live; `out` writable.
 */
KxStatus kx_tuple_norm_squared(const KxTuple *tuple, const KxLimits *limits, uint64_t *out);

/*
 # Safety
 `tuple` must be live; `out` writable.
 */
KxStatus kx_tuple_is_transitive(const KxTuple *tuple, bool *out);

/*
 The Hilbert series truncated at `X^n`.

 # Safety
 `limits` null or live; `out` writable.
 */
KxStatus kx_hilbert(size_t m,
                    size_t n,
                    KxHilbertMethod method,
                    const KxLimits *limits,
                    KxSeries **out);

/*
 # Safety
 `series` must be null or a live series handle.
 */
void kx_series_free(KxSeries *series);

/*
 Number of coefficients (precision + 1).

 # Safety
 `series` must be live; `out` writable.
 */
KxStatus kx_series_len(const KxSeries *series, size_t *out);

/*
 # Safety
 `series` must be live; `out` writable.
 */
KxStatus kx_series_coefficient(const KxSeries *series, size_t i, int64_t *out);

/*
 Number of transitive `F_m`-sets of size `n` up to isomorphism.

 # Safety
 `limits` null or live; `out` writable.
 */
KxStatus kx_transitive_count(size_t m, size_t n, const KxLimits *limits, uint64_t *out);

/*
 Cuspidal counts in degrees `0..=max_degree`, written to `buf[0..=max_degree]`.

 # Safety
 `limits` null or live; `buf` must have `len` writable slots.
 */
KxStatus kx_cuspidal_counts(size_t m,
                            size_t max_degree,
                            const KxLimits *limits,
                            uint64_t *buf,
                            size_t len);

/*
 Index-`n` subgroups of `F_m` by Hall's recurrence.

 # Safety
 `out` writable.
 */
KxStatus kx_hall_count(size_t m, size_t n, uint64_t *out);

/*
 # Safety
 `out` writable.
 */
KxStatus kx_klein_count(uint64_t n, uint64_t *out);

/*
 # Safety
 `out` writable.
 */
KxStatus kx_bs_count(uint64_t d, uint64_t n, uint64_t *out);

/*
 Conjugacy classes of index-`n` subgroups of the group with the given
 relators (letters `a, b, …`, a trailing `-` inverts, `,` separates).

 # Safety
 `relators` NUL-terminated; `limits` null or live; `out` writable.
 */
KxStatus kx_oracle_count(const char *relators, size_t n, const KxLimits *limits, uint64_t *out);

/*
 Runs one numbered self-check (1 to 10).

 # Safety
 `limits` null or live; `passed` writable.
 */
KxStatus kx_selftest(size_t criterion, uint64_t seed, const KxLimits *limits, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KXCOUNT_H */
