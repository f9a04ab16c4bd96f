#ifndef CORNER_FFI_H
#define CORNER_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CORNER_OK 0

#define CORNER_ERR_NULL 1

#define CORNER_ERR_UTF8 2

#define CORNER_ERR_PARSE 3

#define CORNER_ERR_INVALID 4

#define CORNER_ERR_DIMENSION_CAP 5

#define CORNER_ERR_BUDGET 6

#define CORNER_ERR_RANGE 7

#define CORNER_ERR_PANIC 8

#define CORNER_THEORY_BRANCHING 0

#define CORNER_THEORY_MERGING 1

#define CORNER_THEORY_REDUCED_BRANCHING 2

#define CORNER_THEORY_FORMAL 3

#define CORNER_THEORY_GOUBAULT_MINUS 4

#define CORNER_THEORY_GOUBAULT_PLUS 5

/**
 * A finite ω-category, with the precubical set it was generated from
 * when there is one.
 */
typedef struct CornerCategory CornerCategory;

/**
 * Homology groups in consecutive degrees starting at 0.
 */
typedef struct CornerHomology CornerHomology;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *corner_last_error(void);

/**
 * Parses a precubical set in the JSON wire format and builds its free
 * ω-category. A `budget` of 0 selects the default closure budget.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
int32_t corner_category_from_json(const char *json, size_t budget, struct CornerCategory **out);

/**
 * Built-in categories "2_p", "G_p" (presented) and "I_n" (free on the
 * standard n-cube).
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
int32_t corner_category_builtin(const char *name, struct CornerCategory **out);

/**
 * Number of morphisms of dimension exactly `dim`.
 *
 * # Safety
 * `cat` must come from this library and `out` must be valid.
 */
int32_t corner_category_count(const struct CornerCategory *cat, size_t dim, size_t *out);

/**
 * # Safety
 * `cat` must come from this library (or be NULL) and is not used again.
 */
void corner_category_free(struct CornerCategory *cat);

/**
 * Homology in degrees 0..max_dim-1, enumerating cubes up to `max_dim`
 * (between 1 and 4).
 *
 * # Safety
 * `cat` must come from this library and `out` must be valid.
 */
int32_t corner_homology(const struct CornerCategory *cat,
                        int32_t theory_code,
                        size_t max_dim,
                        struct CornerHomology **out);

/**
 * Number of degrees stored (the highest degree plus one).
 *
 * # Safety
 * `h` must come from this library and `out` must be valid.
 */
int32_t corner_homology_degrees(const struct CornerHomology *h, size_t *out);

/**
 * Betti number in `degree`.
 *
 * # Safety
 * `h` must come from this library and `out` must be valid.
 */
int32_t corner_homology_betti(const struct CornerHomology *h, size_t degree, size_t *out);

/**
 * Torsion coefficients in `degree`. Writes at most `cap` values into
 * `buf` (which may be NULL when `cap` is 0) and the total count into
 * `len`.
 *
 * # Safety
 * `h` must come from this library, `len` must be valid and `buf` must
 * hold `cap` values.
 */
int32_t corner_homology_torsion(const struct CornerHomology *h,
                                size_t degree,
                                uint64_t *buf,
                                size_t cap,
                                size_t *len);

/**
 * # Safety
 * `h` must come from this library (or be NULL) and is not used again.
 */
void corner_homology_free(struct CornerHomology *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORNER_FFI_H */
