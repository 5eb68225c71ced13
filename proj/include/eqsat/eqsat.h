/*
 * C interface to the eqsat rewriting engine.
 *
 * Every fallible call returns an eqsat_status; on failure the message is
 * available from eqsat_last_error() on the same thread until the next call.
 * Strings returned through `char**` are heap-allocated and must be released
 * with eqsat_string_free().
 */
#ifndef EQSAT_EQSAT_H
#define EQSAT_EQSAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(EQSAT_BUILDING_LIBRARY)
#define EQSAT_API __declspec(dllexport)
#else
#define EQSAT_API __declspec(dllimport)
#endif
#else
#define EQSAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eqsat_status {
    EQSAT_OK = 0,
    EQSAT_ERR_SYNTAX = 1,
    EQSAT_ERR_THEORY = 2,
    EQSAT_ERR_INVALID_ARGUMENT = 3,
    EQSAT_ERR_INVALID_ID = 4,
    EQSAT_ERR_DIRTY = 5,
    EQSAT_ERR_CAPACITY = 6,
    EQSAT_ERR_INCONSISTENT = 7,
    EQSAT_ERR_UNEXTRACTABLE = 8,
    EQSAT_ERR_IO = 9,
    EQSAT_ERR_INTERNAL = 10
} eqsat_status;

typedef enum eqsat_analysis {
    EQSAT_ANALYSIS_CONST_FOLD = 0,
    EQSAT_ANALYSIS_NONE = 1
} eqsat_analysis;

typedef enum eqsat_scheduler {
    EQSAT_SCHEDULER_SIMPLE = 0,
    EQSAT_SCHEDULER_BACKOFF = 1
} eqsat_scheduler;

typedef enum eqsat_stop_reason {
    EQSAT_STOP_SATURATED = 0,
    EQSAT_STOP_ITER_LIMIT = 1,
    EQSAT_STOP_NODE_LIMIT = 2,
    EQSAT_STOP_TIME_LIMIT = 3,
    EQSAT_STOP_GOAL_REACHED = 4
} eqsat_stop_reason;

typedef enum eqsat_rewrite_status {
    EQSAT_REWRITE_FIXPOINT = 0,
    EQSAT_REWRITE_STEP_LIMIT = 1,
    EQSAT_REWRITE_CYCLE_DETECTED = 2
} eqsat_rewrite_status;

typedef uint32_t eqsat_id;

typedef struct eqsat_theory eqsat_theory;
typedef struct eqsat_egraph eqsat_egraph;
typedef struct eqsat_cost eqsat_cost;

typedef struct eqsat_params {
    uint64_t iter_limit;
    uint64_t node_limit;
    uint64_t time_limit_ms;
    int32_t scheduler; /* eqsat_scheduler */
    uint64_t match_limit;
    uint64_t ban_length;
} eqsat_params;

/* Called after every saturation iteration, graph rebuilt. */
typedef void (*eqsat_iteration_fn)(void* user, size_t iteration, const eqsat_egraph* graph);

EQSAT_API const char* eqsat_version(void);
EQSAT_API const char* eqsat_last_error(void);
EQSAT_API void eqsat_string_free(char* s);

/* Parses an s-expression and prints it canonically. */
EQSAT_API eqsat_status eqsat_term_normalize(const char* text, char** out);

EQSAT_API eqsat_status eqsat_theory_parse(const char* text, eqsat_theory** out);
EQSAT_API eqsat_status eqsat_theory_load(const char* path, eqsat_theory** out);
EQSAT_API eqsat_status eqsat_theory_print(const eqsat_theory* theory, char** out);
EQSAT_API size_t eqsat_theory_rule_count(const eqsat_theory* theory);
EQSAT_API void eqsat_theory_free(eqsat_theory* theory);

EQSAT_API eqsat_status eqsat_egraph_new(eqsat_analysis analysis, eqsat_egraph** out);
EQSAT_API void eqsat_egraph_free(eqsat_egraph* graph);
EQSAT_API eqsat_status eqsat_egraph_add_term(eqsat_egraph* graph, const char* text, eqsat_id* out);
EQSAT_API eqsat_status eqsat_egraph_merge(eqsat_egraph* graph, eqsat_id a, eqsat_id b, eqsat_id* out);
EQSAT_API eqsat_status eqsat_egraph_rebuild(eqsat_egraph* graph);
EQSAT_API eqsat_status eqsat_egraph_find(const eqsat_egraph* graph, eqsat_id id, eqsat_id* out);
EQSAT_API size_t eqsat_egraph_node_count(const eqsat_egraph* graph);
EQSAT_API size_t eqsat_egraph_class_count(const eqsat_egraph* graph);
EQSAT_API int eqsat_egraph_is_clean(const eqsat_egraph* graph);
EQSAT_API eqsat_status eqsat_egraph_dot(const eqsat_egraph* graph, char** out);

EQSAT_API void eqsat_params_default(eqsat_params* params);

/* Runs equality saturation. `observer` may be NULL. `report_json` may be NULL. */
EQSAT_API eqsat_status eqsat_saturate(eqsat_egraph* graph, const eqsat_theory* theory, const eqsat_params* params,
                                      eqsat_iteration_fn observer, void* user, eqsat_stop_reason* stop_reason,
                                      char** report_json);

EQSAT_API eqsat_status eqsat_cost_ast_size(eqsat_cost** out);
EQSAT_API eqsat_status eqsat_cost_ast_depth(eqsat_cost** out);
/* Lines of `<op> <weight>`; unknown ops weigh 1. */
EQSAT_API eqsat_status eqsat_cost_weights_parse(const char* text, eqsat_cost** out);
EQSAT_API eqsat_status eqsat_cost_weights_load(const char* path, eqsat_cost** out);
EQSAT_API void eqsat_cost_free(eqsat_cost* cost);

EQSAT_API eqsat_status eqsat_extract(const eqsat_egraph* graph, eqsat_id root, const eqsat_cost* cost, char** term,
                                     double* total_cost);

/* Adds both terms to `graph` and saturates until they meet. `equal` is set to 0 or 1. */
EQSAT_API eqsat_status eqsat_prove(eqsat_egraph* graph, const eqsat_theory* theory, const eqsat_params* params,
                                   const char* lhs, const char* rhs, int* equal, eqsat_stop_reason* stop_reason,
                                   char** report_json);

/* Classic fixpoint rewriting. `outcome_json` carries result, status, steps and trace. */
EQSAT_API eqsat_status eqsat_rewrite(const eqsat_theory* theory, const char* expr, uint64_t step_limit, int trace,
                                     eqsat_rewrite_status* status, char** outcome_json);

#ifdef __cplusplus
}
#endif

#endif /* EQSAT_EQSAT_H */
