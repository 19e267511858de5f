#ifndef TREEGMF_H
#define TREEGMF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_ARGUMENT = 2,
  TG_STATUS_PARSE = 3,
  TG_STATUS_DEGREE_MISMATCH = 4,
  TG_STATUS_OUT_OF_RANGE = 5,
  TG_STATUS_TOO_LARGE = 6,
  TG_STATUS_INTERNAL = 7,
} TgStatus;

// A polynomial `Σ_r (-1)^r c_r(q) x^{n-r}`.
typedef struct TgPoly TgPoly;

// A labeled tree.
typedef struct TgTree TgTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after success.
// Valid until the next call into this library on the same thread.
const char *tg_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void tg_string_free(char *s);

// Parses the edge-list text format or `{"n": .., "edges": ..}`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum TgStatus tg_tree_parse(const char *text, struct TgTree **out);

// # Safety
// `out` must be writable.
enum TgStatus tg_tree_path(size_t n, struct TgTree **out);

// # Safety
// `out` must be writable.
enum TgStatus tg_tree_star(size_t n, struct TgTree **out);

// # Safety
// `tree` must be null or a handle from this library, not yet freed.
void tg_tree_free(struct TgTree *tree);

// # Safety
// `tree` must be a live handle; `out` must be writable.
enum TgStatus tg_tree_vertex_count(const struct TgTree *tree, size_t *out);

// Isomorphism-invariant code of the tree.
//
// # Safety
// `tree` must be a live handle; `out` must be writable.
enum TgStatus tg_tree_canonical_code(const struct TgTree *tree, char **out);

// Number of free trees on `n` vertices.
//
// # Safety
// `out` must be writable.
enum TgStatus tg_free_tree_count(size_t n, size_t *out);

// `α_i` of a basis element as `"num/den"`. `basis` is one of `m e h p s f`;
// `lambda` uses the `2^2,1^3` or `2,2,1,1,1` notation.
//
// # Safety
// `basis` and `lambda` must be nul-terminated; `out` must be writable.
enum TgStatus tg_alpha(const char *basis, const char *lambda, size_t i, char **out);

// `d_γ(xI − L_q(T))` for `γ` the basis element at `lambda`.
//
// # Safety
// `tree` must be a live handle, `basis` and `lambda` nul-terminated, `out`
// writable.
enum TgStatus tg_gmf(const struct TgTree *tree,
                     const char *basis,
                     const char *lambda,
                     struct TgPoly **out);

// # Safety
// `poly` must be null or a handle from this library, not yet freed.
void tg_poly_free(struct TgPoly *poly);

// Matrix size `n`; coefficients are indexed `0..=n`.
//
// # Safety
// `poly` must be a live handle; `out` must be writable.
enum TgStatus tg_poly_degree(const struct TgPoly *poly, size_t *out);

// Human-readable rendering such as `(1)x^2 - (2)x + (1 + q^2)`.
//
// # Safety
// `poly` must be a live handle; `out` must be writable.
enum TgStatus tg_poly_to_string(const struct TgPoly *poly, char **out);

// `c_r(q)` as the `c0;c1;..` cell format, lowest power of `q` first.
//
// # Safety
// `poly` must be a live handle; `out` must be writable.
enum TgStatus tg_poly_coeff(const struct TgPoly *poly, size_t r, char **out);

// `c_r(q_num / q_den)` as `"num/den"`.
//
// # Safety
// `poly` must be a live handle; `out` must be writable.
enum TgStatus tg_poly_coeff_at(const struct TgPoly *poly,
                               size_t r,
                               int64_t q_num,
                               int64_t q_den,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEGMF_H */
