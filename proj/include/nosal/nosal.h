#ifndef NOSAL_NOSAL_H
#define NOSAL_NOSAL_H

/* C interface to the nosal library.
 *
 * Every call returns a nosal_status. On failure nosal_last_error() gives a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with nosal_string_free. Structured results are
 * JSON documents with a "schema" field. */

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define NOSAL_API __attribute__((visibility("default")))
#else
#define NOSAL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nosal_status {
  NOSAL_OK = 0,
  NOSAL_ERR_PARSE = 1,
  NOSAL_ERR_ARGUMENT = 2,
  NOSAL_ERR_INDEX = 3,
  NOSAL_ERR_CAPACITY = 4,
  NOSAL_ERR_CONVERGENCE = 5,
  NOSAL_ERR_DEGENERATE = 6,
  NOSAL_ERR_INFEASIBLE = 7,
  NOSAL_ERR_PRECONDITION = 8,
  NOSAL_ERR_NO_WITNESS = 9,
  NOSAL_ERR_CODEC = 10,
  NOSAL_ERR_INTERNAL = 100
} nosal_status;

typedef struct nosal_graph nosal_graph;

NOSAL_API const char* nosal_version(void);
NOSAL_API const char* nosal_status_name(nosal_status status);
/* Message of the last failed call on this thread; "" if none. */
NOSAL_API const char* nosal_last_error(void);
NOSAL_API void nosal_string_free(char* s);

/* Graphs */
NOSAL_API nosal_status nosal_graph_new(size_t n, nosal_graph** out);
NOSAL_API void nosal_graph_free(nosal_graph* g);
NOSAL_API nosal_status nosal_graph_clone(const nosal_graph* g, nosal_graph** out);
NOSAL_API size_t nosal_graph_n(const nosal_graph* g);
NOSAL_API size_t nosal_graph_m(const nosal_graph* g);
/* *added is 1 if the edge was new (may be NULL). */
NOSAL_API nosal_status nosal_graph_add_edge(nosal_graph* g, uint32_t u, uint32_t v, int* added);
NOSAL_API nosal_status nosal_graph_remove_edge(nosal_graph* g, uint32_t u, uint32_t v, int* removed);
NOSAL_API nosal_status nosal_graph_has_edge(const nosal_graph* g, uint32_t u, uint32_t v, int* present);
/* Copies up to cap edges as (u, v) pairs into pairs[2*i], pairs[2*i+1];
 * *count receives the total number of edges. */
NOSAL_API nosal_status nosal_graph_edges(const nosal_graph* g, uint32_t* pairs, size_t cap, size_t* count);

/* Text formats. nosal_graph_parse accepts graph6 (one token, optional
 * ">>graph6<<" header) or an edge list. */
NOSAL_API nosal_status nosal_graph_from_graph6(const char* text, nosal_graph** out);
NOSAL_API nosal_status nosal_graph_from_edge_list(const char* text, int compact, nosal_graph** out);
NOSAL_API nosal_status nosal_graph_parse(const char* text, nosal_graph** out);
NOSAL_API nosal_status nosal_graph_to_graph6(const nosal_graph* g, char** out);
NOSAL_API nosal_status nosal_graph_to_edge_list(const nosal_graph* g, char** out);

/* Constructions. params_json is an object of integer parameters, e.g.
 * {"m": 10001}. info_json (may be NULL) receives name, params and the
 * self-checked predictions. */
NOSAL_API nosal_status nosal_generate(const char* name, const char* params_json, nosal_graph** out, char** info_json);
/* JSON array of construction names. */
NOSAL_API nosal_status nosal_construction_names(char** json);

/* Invariants */
NOSAL_API nosal_status nosal_spectral_radius(const nosal_graph* g, double tol, double* lambda);
/* kind: 0 certified yes, 1 numerically no, 2 inconclusive. */
NOSAL_API nosal_status nosal_is_nosal(const nosal_graph* g, int* kind);
NOSAL_API nosal_status nosal_book_size(const nosal_graph* g, int64_t* size);
/* method: 0 codegree, 1 walks, 2 trace (rounded), 3 brute. */
NOSAL_API nosal_status nosal_c4_count(const nosal_graph* g, int method, int64_t* count);
/* Spectral certificate and every count, as one JSON document. */
NOSAL_API nosal_status nosal_analyze(const nosal_graph* g, int max_r, int max_clique, double tol, char** json);

/* Structural dichotomy. sub (may be NULL) receives the extracted subgraph. */
NOSAL_API nosal_status nosal_dichotomy(const nosal_graph* g, double eps, char** json, nosal_graph** sub);

/* Weighted graphs travel as JSON: {"w": [...], "p": {"u-v": value, ...}}.
 * The keys of p are the base edges. */
/* Proof weights of a certified graph (r = 2 gives the book weights). */
NOSAL_API nosal_status nosal_proof_weights(const nosal_graph* g, int r, char** weights_json);
/* Random blowup of a weighted graph. json receives the realized and
 * expected edge counts; blown (may be NULL) receives the sampled graph. */
NOSAL_API nosal_status nosal_blowup(const char* weights_json, size_t N, uint64_t seed, char** json, nosal_graph** blown);

/* Extremal search. config_json keys: objective, m, n_max, r, k, steps,
 * temperature, decay, seed, restarts, threads, refresh_every,
 * certify_every. */
NOSAL_API nosal_status nosal_search(const char* config_json, char** record_json, nosal_graph** best);

/* Verification. format is "json", "csv" or "text". *failed receives the
 * number of fail rows. options_json keys: families, m_values, seed,
 * threads, tol, search_steps. */
NOSAL_API nosal_status nosal_verify_graph(const nosal_graph* g, const char* descriptor, double tol, const char* format,
                                char** out, int* failed);
NOSAL_API nosal_status nosal_verify_suite(const char* options_json, const char* format, char** out, int* failed);
/* JSON array of family names for nosal_verify_suite. */
NOSAL_API nosal_status nosal_family_names(char** json);
NOSAL_API nosal_status nosal_table1(int64_t m, uint64_t seed, size_t search_steps, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
