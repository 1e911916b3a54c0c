/* Plain C interface to the chroma core. All functions return a
 * chroma_status; on failure chroma_last_error() describes the problem
 * (thread-local, valid until the next call on that thread). Strings
 * returned through char** must be released with chroma_string_free. */
#ifndef CHROMA_CHROMA_H
#define CHROMA_CHROMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CHROMA_API __declspec(dllexport)
#else
#define CHROMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chroma_status {
    CHROMA_OK = 0,
    CHROMA_INVALID_ARGUMENT = 1,
    CHROMA_NON_REGULAR = 2,
    CHROMA_DUPLICATE_EDGE = 3,
    CHROMA_SELF_LOOP = 4,
    CHROMA_SIZE_CAP = 5,
    CHROMA_NOT_CUBIC = 6,
    CHROMA_GENERATION_TIMEOUT = 7,
    CHROMA_SIGNING_MISMATCH = 8,
    CHROMA_TOO_LARGE = 9,
    CHROMA_OVERLAP = 10,
    CHROMA_ZERO_DEGREE = 11,
    CHROMA_NO_CONVERGENCE = 12,
    CHROMA_ZERO_VECTOR = 13,
    CHROMA_BINDING_MISMATCH = 14,
    CHROMA_NO_GADGET_META = 15,
    CHROMA_NOT_BIPARTITE = 16,
    CHROMA_BAD_TAU = 17,
    CHROMA_BAD_PART_SIZE = 18,
    CHROMA_MIXED_BINDING = 19,
    CHROMA_BUDGET_EXHAUSTED = 20,
    CHROMA_OUT_OF_RANGE = 21,
    CHROMA_Q_TOO_LARGE = 22,
    CHROMA_PRECONDITION_FAIL = 23,
    CHROMA_TOO_MANY_CLASSES = 24,
    CHROMA_PARSE = 25,
    CHROMA_IO = 26,
    CHROMA_INTERNAL = 99
} chroma_status;

typedef struct chroma_graph chroma_graph;
typedef struct chroma_coloring chroma_coloring;
typedef struct chroma_codeset chroma_codeset;

CHROMA_API const char* chroma_last_error(void);
CHROMA_API const char* chroma_status_name(chroma_status status);
CHROMA_API void chroma_string_free(char* s);

/* Graphs */
CHROMA_API chroma_status chroma_graph_complete(uint32_t q, chroma_graph** out);
CHROMA_API chroma_status chroma_graph_cycle(uint32_t n, chroma_graph** out);
CHROMA_API chroma_status chroma_graph_tensor(uint32_t q, uint32_t power, uint64_t vertex_cap, chroma_graph** out);
CHROMA_API chroma_status chroma_graph_gadget(const chroma_graph* base, chroma_graph** out);
CHROMA_API chroma_status chroma_graph_random_bipartite(uint32_t half, uint32_t d, uint64_t seed, chroma_graph** out);
/* edges: 2*m vertex ids; parts may be NULL, else n labels in {0,1}. */
CHROMA_API chroma_status chroma_graph_from_edges(uint32_t n, const uint32_t* edges, size_t m, const uint8_t* parts,
                                                 chroma_graph** out);
/* signs: one entry per canonical edge, each -1 or +1. */
CHROMA_API chroma_status chroma_graph_two_lift(const chroma_graph* g, const int8_t* signs, size_t count,
                                               chroma_graph** out);
/* signs_out must hold edge_count entries. */
CHROMA_API chroma_status chroma_graph_search_signing(const chroma_graph* g, uint32_t restarts, uint64_t seed,
                                                     unsigned threads, int8_t* signs_out, double* lift_lambda2);
CHROMA_API chroma_status chroma_graph_load(const char* path, chroma_graph** out);
/* provenance_json may be NULL or a JSON object. */
CHROMA_API chroma_status chroma_graph_save(const chroma_graph* g, const char* path, const char* provenance_json);
CHROMA_API chroma_status chroma_graph_to_text(const chroma_graph* g, char** out);
CHROMA_API chroma_status chroma_graph_fingerprint(const chroma_graph* g, char** out);
CHROMA_API void chroma_graph_free(chroma_graph* g);
CHROMA_API uint32_t chroma_graph_vertex_count(const chroma_graph* g);
CHROMA_API uint32_t chroma_graph_degree(const chroma_graph* g);
CHROMA_API size_t chroma_graph_edge_count(const chroma_graph* g);
/* out must hold 2*edge_count entries. */
CHROMA_API chroma_status chroma_graph_edges(const chroma_graph* g, uint32_t* out);

/* Spectral */
/* {"eigenvalues":[...],"lambda2":..,"lambda_min":..,"residual":..,"method":..}.
 * Above dense_cap the eigenvalue list is empty and iteration is used. */
CHROMA_API chroma_status chroma_spectrum_json(const chroma_graph* g, uint32_t dense_cap, char** out);
CHROMA_API chroma_status chroma_lambda2(const chroma_graph* g, double* out);
CHROMA_API chroma_status chroma_lambda_min(const chroma_graph* g, double* out);

/* Colorings */
CHROMA_API chroma_status chroma_coloring_create(const chroma_graph* g, uint32_t q, const uint16_t* colors, size_t n,
                                                chroma_coloring** out);
/* g may be NULL; when given the coloring is bound to it. */
CHROMA_API chroma_status chroma_coloring_load(const char* path, const chroma_graph* g, chroma_coloring** out);
CHROMA_API chroma_status chroma_coloring_to_json(const chroma_coloring* c, const char* graph_ref, char** out);
CHROMA_API void chroma_coloring_free(chroma_coloring* c);
CHROMA_API uint32_t chroma_coloring_q(const chroma_coloring* c);
CHROMA_API size_t chroma_coloring_size(const chroma_coloring* c);
CHROMA_API chroma_status chroma_coloring_colors(const chroma_coloring* c, uint16_t* out);
/* *proper is 1 or 0; on 0 the violating edge is written to u, v. */
CHROMA_API chroma_status chroma_is_proper(const chroma_graph* g, const chroma_coloring* c, int* proper, uint32_t* u,
                                          uint32_t* v);
/* sigma_out may be NULL, else holds q entries. */
CHROMA_API chroma_status chroma_distance(const chroma_coloring* x, const chroma_coloring* y, uint64_t* distance,
                                         uint16_t* sigma_out);
/* sampler: "gadget" or "biased" (tau < 0 selects 1/(8 d^2)). */
CHROMA_API chroma_status chroma_sample(const chroma_graph* g, const char* sampler, uint32_t q, double tau,
                                       uint64_t seed, chroma_coloring** out);
CHROMA_API chroma_status chroma_layered_pair(const chroma_graph* g, uint32_t q, chroma_codeset** out);
CHROMA_API chroma_status chroma_coordinate_colorings(const chroma_graph* g, chroma_codeset** out);

/* Codes. delta is an exact rational string such as "2/3". */
CHROMA_API chroma_status chroma_codeset_create(const chroma_coloring* const* members, size_t count, const char* delta,
                                               chroma_codeset** out);
CHROMA_API chroma_status chroma_codeset_load(const char* path, const chroma_graph* g, chroma_codeset** out);
CHROMA_API chroma_status chroma_codeset_to_json(const chroma_codeset* c, char** out);
CHROMA_API void chroma_codeset_free(chroma_codeset* c);
CHROMA_API size_t chroma_codeset_size(const chroma_codeset* c);
/* Returns a fresh copy of member i. */
CHROMA_API chroma_status chroma_codeset_member(const chroma_codeset* c, size_t i, chroma_coloring** out);
/* Checks against the set's own delta; worst pair written when non-NULL. */
CHROMA_API chroma_status chroma_verify_delta(const chroma_codeset* c, unsigned threads, int* ok, uint64_t* min_dist,
                                             size_t* worst_i, size_t* worst_j);
CHROMA_API chroma_status chroma_set_delta(chroma_codeset* c, const char* delta);
/* sampler: "gadget", "biased" or "enumerate" (all proper colorings in order). */
CHROMA_API chroma_status chroma_pack(const chroma_graph* g, const char* sampler, uint32_t q, double tau,
                                     const char* delta, size_t target, size_t budget, uint64_t seed,
                                     chroma_codeset** out, int* budget_exhausted);
CHROMA_API chroma_status chroma_exact_f_json(const chroma_graph* g, uint32_t q, const char* delta, char** out);
CHROMA_API chroma_status chroma_empirical_f_json(const char* config_json, char** out);

/* Regimes */
CHROMA_API chroma_status chroma_certify_json(uint32_t q, const char* delta, const char* lambda, char** out);
CHROMA_API chroma_status chroma_regime_csv_header(char** out);
typedef void (*chroma_row_callback)(const char* csv_row, void* user);
/* config_json NULL uses the default grid for q. existing_csv (may be NULL)
 * lists rows already written; their grid points are skipped. */
CHROMA_API chroma_status chroma_regime_map(const char* config_json, uint32_t q, unsigned threads,
                                           const char* existing_csv, chroma_row_callback on_row, void* user);

#ifdef __cplusplus
}
#endif

#endif
