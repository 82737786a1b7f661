#ifndef COXBRAUER_H
#define COXBRAUER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CbStatus {
  CB_STATUS_OK = 0,
  CB_STATUS_NULL_POINTER = 1,
  CB_STATUS_INVALID_INPUT = 2,
  CB_STATUS_PARSE = 3,
  CB_STATUS_BAD_REGIME = 4,
  // A mathematical check came out false.
  CB_STATUS_VERIFICATION_FAILED = 5,
  CB_STATUS_INTERNAL = 6,
} CbStatus;

// A Brauer tree algebra over a prime field.
typedef struct CbAlgebra CbAlgebra;

// A planar Brauer tree.
typedef struct CbTree CbTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Owned by the
// library.
const char *cb_last_error(void);

// Library version, a static string.
const char *cb_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void cb_string_free(char *s);

// Build a fixture tree: `2g2` (with `qsq`, `ell`, or 0 for the defaults)
// or `lineN` (with `r` and `mu` as given, `ell` unused).
//
// # Safety
// `name` must be a nul-terminated string and `out` writable.
enum CbStatus cb_tree_fixture(const char *name,
                              uint64_t qsq,
                              uint64_t ell,
                              uint64_t r,
                              uint64_t mu,
                              struct CbTree **out);

// Parse a tree from its JSON form.
//
// # Safety
// `json` must be a nul-terminated string and `out` writable.
enum CbStatus cb_tree_from_json(const char *json, struct CbTree **out);

// The star tree of `D⋊E` with `|D| = d`, `|E| = e` and action exponent `n`.
//
// # Safety
// `out` must be writable.
enum CbStatus cb_tree_star(uint64_t d, uint64_t e, uint64_t n, struct CbTree **out);

// # Safety
// `tree` must be null or a handle from this library, not yet freed.
void cb_tree_free(struct CbTree *tree);

// Number of non-exceptional vertices, or 0 for a null handle.
//
// # Safety
// `tree` must be null or a live handle.
size_t cb_tree_num_edges(const struct CbTree *tree);

// Multiplicity of the exceptional node, or 0 for a null handle.
//
// # Safety
// `tree` must be null or a live handle.
uint64_t cb_tree_multiplicity(const struct CbTree *tree);

// # Safety
// `tree` must be a live handle and `out` writable.
enum CbStatus cb_tree_to_json(const struct CbTree *tree, char **out);

// # Safety
// `tree` must be a live handle and `out` writable.
enum CbStatus cb_tree_to_dot(const struct CbTree *tree, char **out);

// The tree algebra over `F_ell`; `ell = 0` picks the tree's own prime or the
// least prime congruent to 1 mod `h0·μ`.
//
// # Safety
// `tree` must be a live handle and `out` writable.
enum CbStatus cb_algebra_new(const struct CbTree *tree, uint64_t ell, struct CbAlgebra **out);

// # Safety
// `alg` must be null or a handle from this library, not yet freed.
void cb_algebra_free(struct CbAlgebra *alg);

// # Safety
// `alg` must be null or a live handle.
size_t cb_algebra_dim(const struct CbAlgebra *alg);

// Number of arrows `i → j` in the quiver.
//
// # Safety
// `alg` must be a live handle and `out` writable.
enum CbStatus cb_algebra_ext1(const struct CbAlgebra *alg, size_t i, size_t j, size_t *out);

// Verify that the Rickard complexes form a tilting complex. Writes the
// dimension of its endomorphism ring on success.
//
// # Safety
// `alg` must be a live handle and `end_dim` writable.
enum CbStatus cb_algebra_check_tilting(const struct CbAlgebra *alg, size_t *end_dim);

// JSON report for the Rickard complex of vertex `j`.
//
// # Safety
// `alg` must be a live handle and `out` writable.
enum CbStatus cb_algebra_rickard_json(const struct CbAlgebra *alg, size_t j, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXBRAUER_H */
