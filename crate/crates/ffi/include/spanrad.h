#ifndef SPANRAD_H
#define SPANRAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpanradStatus {
  SPANRAD_STATUS_OK = 0,
  SPANRAD_STATUS_NULL_POINTER = 1,
  SPANRAD_STATUS_INVALID_ARGUMENT = 2,
  SPANRAD_STATUS_PARSE = 3,
  /**
   * Input is larger than an exhaustive routine accepts.
   */
  SPANRAD_STATUS_CAP_EXCEEDED = 4,
  /**
   * An enumeration budget ran out.
   */
  SPANRAD_STATUS_BUDGET_EXHAUSTED = 5,
  /**
   * The question is undefined for this input, e.g. no k-matching exists.
   */
  SPANRAD_STATUS_NOT_APPLICABLE = 6,
  SPANRAD_STATUS_PANIC = 7,
} SpanradStatus;

typedef enum SpanradFamily {
  /**
   * Needs `d`.
   */
  SPANRAD_FAMILY_TREE_EXTREMAL = 0,
  /**
   * Needs `d`, `q`.
   */
  SPANRAD_FAMILY_TREE_PROOF_G1 = 1,
  /**
   * Needs `k`, `s`.
   */
  SPANRAD_FAMILY_FKE_PROOF_G1 = 2,
  /**
   * Needs `k`.
   */
  SPANRAD_FAMILY_FKE_EXTREMAL_A = 3,
  /**
   * Needs `k`, `delta`.
   */
  SPANRAD_FAMILY_FKE_EXTREMAL_B = 4,
} SpanradFamily;

typedef enum SpanradTreeOutcome {
  SPANRAD_TREE_OUTCOME_FOUND = 0,
  SPANRAD_TREE_OUTCOME_ABSENT = 1,
  SPANRAD_TREE_OUTCOME_UNKNOWN = 2,
} SpanradTreeOutcome;

/**
 * Opaque graph handle.
 */
typedef struct SpanradGraph SpanradGraph;

/**
 * Family selector and parameters; fields a family does not use are ignored.
 */
typedef struct SpanradFamilyParams {
  enum SpanradFamily family;
  size_t n;
  size_t d;
  size_t q;
  size_t k;
  size_t s;
  size_t delta;
} SpanradFamilyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library on this thread.
 */
const char *spanrad_last_error(void);

/**
 * Parses one graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_graph_from_graph6(const char *text, struct SpanradGraph **out);

/**
 * Builds a graph from `edge_count` vertex pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (may be NULL when
 * `edge_count` is 0); `out` must be valid for writes.
 */
enum SpanradStatus spanrad_graph_from_edges(size_t n,
                                            const size_t *edges,
                                            size_t edge_count,
                                            struct SpanradGraph **out);

/**
 * Builds one member of an extremal family.
 *
 * # Safety
 * `params` must be readable; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_family_build(const struct SpanradFamilyParams *params,
                                        struct SpanradGraph **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a live handle from this library, not used afterwards.
 */
void spanrad_graph_free(struct SpanradGraph *g);

/**
 * Encodes a graph as a newly allocated graph6 string; release it with
 * `spanrad_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_graph_to_graph6(const struct SpanradGraph *g, char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library, not used afterwards.
 */
void spanrad_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_graph_order(const struct SpanradGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_graph_edge_count(const struct SpanradGraph *g, size_t *out);

/**
 * Largest adjacency eigenvalue to absolute tolerance `tol`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_spectral_radius(const struct SpanradGraph *g, double tol, double *out);

/**
 * `sqrt(2e - n + 1)` and whether the graph is a star or complete (the
 * equality cases). `SPANRAD_STATUS_NOT_APPLICABLE` when `2e - n + 1 < 0`.
 *
 * # Safety
 * `g` must be a live handle; `bound` and `equality` must be valid for writes.
 */
enum SpanradStatus spanrad_hong_bound(const struct SpanradGraph *g, double *bound, bool *equality);

/**
 * Spectral radius of the leaf-distance extremal graph on `n` vertices.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SpanradStatus spanrad_threshold_tree(size_t n, size_t d, double tol, double *out);

/**
 * Larger spectral radius of the two fractional-extendability extremal graphs.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SpanradStatus spanrad_threshold_fke(size_t n, size_t k, size_t delta, double tol, double *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_has_fpm(const struct SpanradGraph *g, bool *out);

/**
 * Fractional k-extendability by the subset characterization.
 * `SPANRAD_STATUS_NOT_APPLICABLE` when there is no k-matching or `n < 2k+2`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_is_fke(const struct SpanradGraph *g, size_t k, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_independence_number(const struct SpanradGraph *g, size_t *out);

/**
 * Searches for a spanning tree whose leaves are pairwise at distance at
 * least `d`. Exhaustive mode (`construct == false`) refuses graphs with more
 * than `budget` spanning trees by reporting `SPANRAD_TREE_OUTCOME_UNKNOWN`;
 * construct mode never reports `SPANRAD_TREE_OUTCOME_ABSENT`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid for writes.
 */
enum SpanradStatus spanrad_tree_leaf_distance(const struct SpanradGraph *g,
                                              size_t d,
                                              bool construct,
                                              uint64_t budget,
                                              uint64_t seed,
                                              enum SpanradTreeOutcome *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPANRAD_H */
