/*
 * ksforge C API.
 *
 * Kochen-Specker hypergraph toolkit: MMP parsing, 0/1 colorability,
 * edge stripping, canonical labeling, maximal loops, parity proofs,
 * 600-cell realization and the stripping census.
 *
 * Conventions:
 *   - Every fallible call returns ks_status; on failure ks_last_error()
 *     returns a message for the calling thread, valid until its next call.
 *   - Objects are opaque handles released with their *_free function.
 *   - Strings returned through char** are released with ks_string_free.
 *   - Visitor callbacks return nonzero to continue, zero to stop.
 *   - Ranks and counts that can exceed 64 bits are decimal strings.
 */
#ifndef KSFORGE_H
#define KSFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(KSFORGE_BUILDING)
#define KSFORGE_API __attribute__((visibility("default")))
#else
#define KSFORGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ks_status {
    KS_OK = 0,
    KS_ERR_PARSE = 1,    /* malformed MMP text or hypergraph structure */
    KS_ERR_INVALID = 2,  /* bad argument, plan or configuration */
    KS_ERR_RANGE = 3,    /* index out of range or buffer too small */
    KS_ERR_IO = 4,       /* file or persistence failure */
    KS_ERR_LIMIT = 5,    /* text alphabet exhausted, search budget exceeded */
    KS_ERR_INTERNAL = 6
} ks_status;

typedef struct ks_hypergraph ks_hypergraph;
typedef struct ks_dedupe ks_dedupe;
typedef struct ks_ray_system ks_ray_system;

KSFORGE_API const char* ks_version(void);
KSFORGE_API const char* ks_status_name(ks_status status);
KSFORGE_API const char* ks_last_error(void);
KSFORGE_API void ks_string_free(char* s);

/* ---- hypergraphs and MMP text ---------------------------------------- */

/* Skip the "two edges share at most two vertices" validation. */
#define KS_PARSE_NO_OVERLAP_CHECK 1u

/* missing_period may be NULL; it is set to 1 when the terminal '.' was absent. */
KSFORGE_API ks_status ks_hypergraph_parse(const char* text, unsigned flags, ks_hypergraph** out,
                                          int* missing_period);
/* edges holds 4 * edge_count vertex indices. */
KSFORGE_API ks_status ks_hypergraph_create(size_t vertex_count, const uint32_t* edges, size_t edge_count,
                                           unsigned flags, ks_hypergraph** out);
KSFORGE_API void ks_hypergraph_free(ks_hypergraph* h);
KSFORGE_API size_t ks_hypergraph_vertex_count(const ks_hypergraph* h);
KSFORGE_API size_t ks_hypergraph_edge_count(const ks_hypergraph* h);
KSFORGE_API ks_status ks_hypergraph_edge(const ks_hypergraph* h, size_t index, uint32_t out[4]);
KSFORGE_API ks_status ks_hypergraph_serialize(const ks_hypergraph* h, char** out);
KSFORGE_API ks_status ks_hypergraph_renormalize(const ks_hypergraph* h, ks_hypergraph** out);
KSFORGE_API int ks_hypergraph_is_connected(const ks_hypergraph* h);
/* out receives vertex_count entries. */
KSFORGE_API ks_status ks_hypergraph_degrees(const ks_hypergraph* h, size_t* out, size_t capacity);
/* Sub-hypergraph made of the listed edges, optionally renormalized. */
KSFORGE_API ks_status ks_hypergraph_select(const ks_hypergraph* h, const size_t* edges, size_t count,
                                           int renormalize, ks_hypergraph** out);
/* MMP label of a vertex index, or 0 when it has none. */
KSFORGE_API char ks_label(uint32_t vertex);

/* ---- coloring ---------------------------------------------------------- */

/* values (capacity >= vertex_count) receives the witness when colorable. */
KSFORGE_API ks_status ks_find_coloring(const ks_hypergraph* h, int* colorable, uint8_t* values, size_t capacity);

/* ---- stripping --------------------------------------------------------- */

typedef struct ks_strip_plan {
    size_t k;
    const char* start;     /* 1-based rank; NULL = 1 */
    const char* end;       /* inclusive; NULL = C(B, k) */
    const char* increment; /* NULL = 1 */
    int drop_disconnected;
    int renormalize;
} ks_strip_plan;

typedef int (*ks_hypergraph_visitor)(const ks_hypergraph* h, void* user);

KSFORGE_API void ks_strip_plan_init(ks_strip_plan* plan);
KSFORGE_API ks_status ks_strip_count(const ks_hypergraph* h, size_t k, char** count);
KSFORGE_API ks_status ks_strip(const ks_hypergraph* h, const ks_strip_plan* plan, ks_hypergraph_visitor visit,
                               void* user);

typedef enum ks_dedupe_mode { KS_DEDUPE_EXACT = 0, KS_DEDUPE_ISO = 1 } ks_dedupe_mode;

KSFORGE_API ks_status ks_dedupe_create(ks_dedupe_mode mode, ks_dedupe** out);
KSFORGE_API ks_status ks_dedupe_insert(ks_dedupe* d, const ks_hypergraph* h, int* is_new);
KSFORGE_API size_t ks_dedupe_size(const ks_dedupe* d);
KSFORGE_API void ks_dedupe_free(ks_dedupe* d);

/* ---- isomorphism ------------------------------------------------------- */

/* Canonically relabeled copy with sorted edges. */
KSFORGE_API ks_status ks_canonical(const ks_hypergraph* h, ks_hypergraph** out);
/* mapping (capacity >= vertex_count) may be NULL. */
KSFORGE_API ks_status ks_are_isomorphic(const ks_hypergraph* a, const ks_hypergraph* b, int* isomorphic,
                                        uint32_t* mapping, size_t capacity);

/* ---- loops ------------------------------------------------------------- */

typedef struct ks_loop_result {
    size_t order;       /* 0 when there is no loop */
    int exact;          /* 0 when node_budget ran out; order is then a lower bound */
    size_t witness_len; /* entries written to the witness arrays */
} ks_loop_result;

/* witness_edges/witness_junctions may be NULL; otherwise they need room for `order` entries. */
KSFORGE_API ks_status ks_max_loop(const ks_hypergraph* h, uint64_t node_budget, ks_loop_result* result,
                                  size_t* witness_edges, uint32_t* witness_junctions, size_t capacity);

/* ---- parity ------------------------------------------------------------ */

typedef struct ks_parity_verdict {
    int holds;
    int edge_count_odd;
    size_t offending_count; /* odd-degree vertices; first `capacity` written to offending */
} ks_parity_verdict;

typedef int (*ks_edge_set_visitor)(const size_t* edges, size_t count, void* user);

KSFORGE_API ks_status ks_parity_proof(const ks_hypergraph* h, ks_parity_verdict* verdict, uint32_t* offending,
                                      size_t capacity);
/* Every odd-sized set of `tetrads` edges covering each of its vertices exactly twice. */
KSFORGE_API ks_status ks_parity_search(const ks_hypergraph* h, size_t tetrads, ks_edge_set_visitor visit, void* user);

/* ---- geometry ---------------------------------------------------------- */

KSFORGE_API ks_status ks_ray_system_600cell(ks_ray_system** out);
KSFORGE_API void ks_ray_system_free(ks_ray_system* rs);
KSFORGE_API size_t ks_ray_system_ray_count(const ks_ray_system* rs);
KSFORGE_API size_t ks_ray_system_tetrad_count(const ks_ray_system* rs);
/* "(c1, c2, c3, c4)" with components rendered as "a+b*phi". */
KSFORGE_API ks_status ks_ray_system_ray_text(const ks_ray_system* rs, size_t index, char** out);
KSFORGE_API ks_status ks_ray_system_tetrad(const ks_ray_system* rs, size_t index, size_t out[4]);
/* mapping (capacity >= vertex_count) receives ray indices. */
KSFORGE_API ks_status ks_find_assignment(const ks_hypergraph* h, const ks_ray_system* rs, uint64_t node_budget,
                                         int* found, size_t* mapping, size_t capacity);
KSFORGE_API ks_status ks_verify_assignment(const ks_hypergraph* h, const ks_ray_system* rs, const size_t* mapping,
                                           size_t count, int* valid);

/* ---- pipeline ---------------------------------------------------------- */

KSFORGE_API ks_status ks_is_critical(const ks_hypergraph* h, int* critical);

typedef struct ks_census_config {
    size_t target_blocks;
    ks_strip_plan plan; /* k = edges removed per level */
    size_t population_cap;
    uint64_t seed;
    size_t jobs;
    size_t critical_max_blocks;
    size_t loop_max_blocks;
    int filter_before_iso;
    const char* state_dir; /* NULL = no persistence */
    int resume;
    size_t max_levels; /* 0 = run to the target */
} ks_census_config;

typedef struct ks_level_report {
    size_t blocks;
    size_t generated;
    size_t distinct;
    size_t noncolorable;
    size_t nonisomorphic;
    size_t kept;
} ks_level_report;

typedef struct ks_census_record {
    const char* mmp;
    size_t vertices;
    size_t blocks;
    long max_loop; /* -1 = not computed */
    int parity;
    int critical;  /* -1 = not computed */
    const char* line; /* tab-separated form, see ks_census_record_header */
} ks_census_record;

typedef void (*ks_level_visitor)(const ks_level_report* report, void* user);
typedef int (*ks_record_visitor)(const ks_census_record* record, void* user);

KSFORGE_API void ks_census_config_init(ks_census_config* config);
KSFORGE_API const char* ks_census_record_header(void);
/* complete is set to 0 when the run stopped at max_levels. */
KSFORGE_API ks_status ks_census(const ks_hypergraph* start, const ks_census_config* config, ks_level_visitor on_level,
                                ks_record_visitor on_record, void* user, int* complete);

typedef struct ks_core_config {
    size_t samples;
    uint64_t seed;
    size_t jobs;
    size_t loop_max_blocks;
} ks_core_config;

KSFORGE_API void ks_core_config_init(ks_core_config* config);
/* Random greedy descents to critical subsets. The visitor sees one record
 * per isomorphism class, fewest blocks first, with the number of descents
 * that ended in it. classes may be NULL. */
typedef int (*ks_core_visitor)(const ks_census_record* record, size_t hits, void* user);
KSFORGE_API ks_status ks_sample_cores(const ks_hypergraph* start, const ks_core_config* config,
                                      ks_core_visitor on_record, void* user, size_t* classes);

typedef struct ks_corpus_check {
    const char* name;
    const char* property;
    int passed;
    const char* detail;
} ks_corpus_check;

typedef void (*ks_corpus_visitor)(const ks_corpus_check* check, void* user);

KSFORGE_API ks_status ks_verify_corpus(const char* path, ks_corpus_visitor visit, void* user, int* all_passed,
                                       size_t* distinct_classes);

#ifdef __cplusplus
}
#endif

#endif /* KSFORGE_H */
