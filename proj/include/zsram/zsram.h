#ifndef ZSRAM_H
#define ZSRAM_H

/* C API for the zero-sum Ramsey toolkit. All functions return zs_status;
 * outputs are opaque handles or malloc'd strings released through the
 * matching zs_*_free call. zs_last_error() describes the most recent failure
 * on the calling thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zs_status {
    ZS_OK = 0,
    ZS_ERR_VALIDATION = 1,
    ZS_ERR_STRUCTURAL = 2,
    ZS_ERR_CAPACITY = 3,
    ZS_ERR_TRUNCATED = 4,
    ZS_ERR_INTERNAL = 5
} zs_status;

typedef struct zs_graph zs_graph;
typedef struct zs_colouring zs_colouring;

const char* zs_version(void);
const char* zs_last_error(void);
void zs_string_free(char* s);

/* Graphs: JSON {"vertices": N, "edges": [[u,v], ...]} or "u v" lines. */
zs_status zs_graph_parse(const char* text, zs_graph** out);
zs_status zs_graph_named(const char* kind, int param, zs_graph** out);
zs_status zs_graph_random_regular(int degree, int vertices, uint64_t seed, zs_graph** out);
zs_status zs_graph_to_json(const zs_graph* g, char** out);
int zs_graph_vertices(const zs_graph* g);
int64_t zs_graph_edge_count(const zs_graph* g);
int zs_graph_max_degree(const zs_graph* g);
void zs_graph_free(zs_graph* g);

/* Colourings of complete pools, in the documented JSON format. */
zs_status zs_colouring_parse(const char* json, zs_colouring** out);
zs_status zs_colouring_random(const char* group, int t, uint64_t seed, zs_colouring** out);
zs_status zs_colouring_planted(const zs_graph* g, const char* group, int t, uint64_t seed,
                               zs_colouring** out);
zs_status zs_colouring_constant(const char* group, int t, const char* element,
                                zs_colouring** out);
zs_status zs_colouring_to_json(const zs_colouring* c, char** out);
int zs_colouring_pool_size(const zs_colouring* c);
void zs_colouring_free(zs_colouring* c);

/* Brute-force oracle. */
typedef struct zs_ramsey_result {
    int found; /* 1 when value holds the answer */
    int value;
    int truncated;
    int64_t colorings_examined;
} zs_ramsey_result;

zs_status zs_ramsey(const zs_graph* g, const char* group, int t_max, int64_t max_colorings,
                    int symmetry_pruning, int threads, zs_ramsey_result* out);

/* witness == NULL afterwards means no witness exists at this t. */
zs_status zs_lower_bound_witness(const zs_graph* g, const char* group, int t,
                                 zs_colouring** witness);

/* injection == NULL afterwards means no zero-sum copy exists in the pool.
 * Otherwise a JSON object {"vertex": pool_vertex, ...}. */
zs_status zs_find_zero_sum_copy(const zs_graph* g, const zs_colouring* c, char** injection);

/* Embedding engine. Zeroed fields select the paper defaults. */
typedef struct zs_embed_options {
    int64_t alpha;
    int64_t beta;
    int64_t gadget_cap;
    int strict_telemetry;
    int threads;
} zs_embed_options;

/* result is a JSON object: status, alpha, beta, scaled, and on success the
 * injection, certificate and per-round transcript. Engine failures still
 * return ZS_OK with status recorded in the JSON; only malformed inputs or
 * internal errors map to nonzero zs_status. */
zs_status zs_embed(const zs_graph* g, const zs_colouring* c, const zs_embed_options* options,
                   char** result);

/* Invariant suites ("kneser", "psi", "algebra2", "egz", "lemma33",
 * "invariant-factors", "blueprints", "realization-oracle"). Zero options
 * select each suite's defaults. result holds name/pass/cases/seconds/detail.
 */
typedef struct zs_check_options {
    int max_order;
    int max_x;
    int64_t random_cases;
    int count;
    int degree;
    int vertices;
    uint64_t seed;
} zs_check_options;

zs_status zs_check(const char* suite, const zs_check_options* options, char** result);
zs_status zs_check_suite_names(char** names_json);

#ifdef __cplusplus
}
#endif

#endif /* ZSRAM_H */
