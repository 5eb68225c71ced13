#include "eqsat/eqsat.h"

#include "eqsat/classic.hpp"
#include "eqsat/egraph.hpp"
#include "eqsat/error.hpp"
#include "eqsat/extract.hpp"
#include "eqsat/json.hpp"
#include "eqsat/rules.hpp"
#include "eqsat/saturate.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct eqsat_theory {
    eqsat::Theory theory;
};

struct eqsat_egraph {
    eqsat::EGraph graph;
};

struct eqsat_cost {
    eqsat::CostFunction cost;
};

namespace {

thread_local std::string g_last_error;

eqsat_status fail(eqsat_status status, const char* what)
{
    g_last_error = what;
    return status;
}

template <class F>
eqsat_status guarded(F&& body)
{
    g_last_error.clear();
    try {
        body();
        return EQSAT_OK;
    } catch (const eqsat::SyntaxError& e) {
        return fail(EQSAT_ERR_SYNTAX, e.what());
    } catch (const eqsat::TheoryError& e) {
        return fail(EQSAT_ERR_THEORY, e.what());
    } catch (const eqsat::UnboundVariable& e) {
        return fail(EQSAT_ERR_THEORY, e.what());
    } catch (const eqsat::InvalidId& e) {
        return fail(EQSAT_ERR_INVALID_ID, e.what());
    } catch (const eqsat::DirtyGraph& e) {
        return fail(EQSAT_ERR_DIRTY, e.what());
    } catch (const eqsat::CapacityError& e) {
        return fail(EQSAT_ERR_CAPACITY, e.what());
    } catch (const eqsat::AnalysisInconsistency& e) {
        return fail(EQSAT_ERR_INCONSISTENT, e.what());
    } catch (const eqsat::Unextractable& e) {
        return fail(EQSAT_ERR_UNEXTRACTABLE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(EQSAT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        // file access is the only plain runtime_error the core raises
        return fail(EQSAT_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(EQSAT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(EQSAT_ERR_INTERNAL, "unknown error");
    }
}

template <class T>
void require(const T* p, const char* name)
{
    if (p == nullptr)
        throw std::invalid_argument(std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

eqsat::SaturationParams to_params(const eqsat_params* p)
{
    eqsat::SaturationParams out;
    if (!p)
        return out;
    out.iter_limit = p->iter_limit;
    out.node_limit = p->node_limit;
    out.time_limit_ms = p->time_limit_ms;
    if (p->scheduler != EQSAT_SCHEDULER_SIMPLE && p->scheduler != EQSAT_SCHEDULER_BACKOFF)
        throw std::invalid_argument("unknown scheduler " + std::to_string(p->scheduler));
    out.scheduler = p->scheduler == EQSAT_SCHEDULER_BACKOFF ? eqsat::Scheduler::Backoff : eqsat::Scheduler::Simple;
    out.match_limit = p->match_limit;
    out.ban_length = p->ban_length;
    out.validate();
    return out;
}

eqsat_stop_reason to_c(eqsat::StopReason r)
{
    switch (r) {
    case eqsat::StopReason::Saturated:
        return EQSAT_STOP_SATURATED;
    case eqsat::StopReason::IterLimit:
        return EQSAT_STOP_ITER_LIMIT;
    case eqsat::StopReason::NodeLimit:
        return EQSAT_STOP_NODE_LIMIT;
    case eqsat::StopReason::TimeLimit:
        return EQSAT_STOP_TIME_LIMIT;
    case eqsat::StopReason::GoalReached:
        return EQSAT_STOP_GOAL_REACHED;
    }
    return EQSAT_STOP_SATURATED;
}

} // namespace

extern "C" {

const char* eqsat_version(void)
{
    return "1.0.0";
}

const char* eqsat_last_error(void)
{
    return g_last_error.c_str();
}

void eqsat_string_free(char* s)
{
    std::free(s);
}

eqsat_status eqsat_term_normalize(const char* text, char** out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = dup_string(eqsat::print_term(eqsat::parse_term(text)));
    });
}

eqsat_status eqsat_theory_parse(const char* text, eqsat_theory** out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new eqsat_theory{eqsat::parse_theory(text)};
    });
}

eqsat_status eqsat_theory_load(const char* path, eqsat_theory** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new eqsat_theory{eqsat::load_theory(path)};
    });
}

eqsat_status eqsat_theory_print(const eqsat_theory* theory, char** out)
{
    return guarded([&] {
        require(theory, "theory");
        require(out, "out");
        *out = dup_string(eqsat::print_theory(theory->theory));
    });
}

size_t eqsat_theory_rule_count(const eqsat_theory* theory)
{
    return theory ? theory->theory.rules.size() : 0;
}

void eqsat_theory_free(eqsat_theory* theory)
{
    delete theory;
}

eqsat_status eqsat_egraph_new(eqsat_analysis analysis, eqsat_egraph** out)
{
    return guarded([&] {
        require(out, "out");
        if (analysis != EQSAT_ANALYSIS_CONST_FOLD && analysis != EQSAT_ANALYSIS_NONE)
            throw std::invalid_argument("unknown analysis " + std::to_string(static_cast<int>(analysis)));
        auto domain = analysis == EQSAT_ANALYSIS_NONE ? eqsat::no_analysis() : eqsat::const_fold_analysis();
        *out = new eqsat_egraph{eqsat::EGraph(std::move(domain))};
    });
}

void eqsat_egraph_free(eqsat_egraph* graph)
{
    delete graph;
}

eqsat_status eqsat_egraph_add_term(eqsat_egraph* graph, const char* text, eqsat_id* out)
{
    return guarded([&] {
        require(graph, "graph");
        require(text, "text");
        eqsat::EClassId id = graph->graph.add_term(eqsat::parse_term(text));
        if (out)
            *out = id.value;
    });
}

eqsat_status eqsat_egraph_merge(eqsat_egraph* graph, eqsat_id a, eqsat_id b, eqsat_id* out)
{
    return guarded([&] {
        require(graph, "graph");
        eqsat::EClassId id = graph->graph.merge(eqsat::EClassId{a}, eqsat::EClassId{b});
        if (out)
            *out = id.value;
    });
}

eqsat_status eqsat_egraph_rebuild(eqsat_egraph* graph)
{
    return guarded([&] {
        require(graph, "graph");
        graph->graph.rebuild();
    });
}

eqsat_status eqsat_egraph_find(const eqsat_egraph* graph, eqsat_id id, eqsat_id* out)
{
    return guarded([&] {
        require(graph, "graph");
        require(out, "out");
        *out = graph->graph.find(eqsat::EClassId{id}).value;
    });
}

size_t eqsat_egraph_node_count(const eqsat_egraph* graph)
{
    return graph ? graph->graph.node_count() : 0;
}

size_t eqsat_egraph_class_count(const eqsat_egraph* graph)
{
    return graph ? graph->graph.class_count() : 0;
}

int eqsat_egraph_is_clean(const eqsat_egraph* graph)
{
    return graph && graph->graph.is_clean() ? 1 : 0;
}

eqsat_status eqsat_egraph_dot(const eqsat_egraph* graph, char** out)
{
    return guarded([&] {
        require(graph, "graph");
        require(out, "out");
        *out = dup_string(eqsat::dump_dot(graph->graph));
    });
}

void eqsat_params_default(eqsat_params* params)
{
    if (!params)
        return;
    eqsat::SaturationParams d;
    params->iter_limit = d.iter_limit;
    params->node_limit = d.node_limit;
    params->time_limit_ms = d.time_limit_ms;
    params->scheduler = EQSAT_SCHEDULER_SIMPLE;
    params->match_limit = d.match_limit;
    params->ban_length = d.ban_length;
}

eqsat_status eqsat_saturate(eqsat_egraph* graph, const eqsat_theory* theory, const eqsat_params* params,
                            eqsat_iteration_fn observer, void* user, eqsat_stop_reason* stop_reason,
                            char** report_json)
{
    return guarded([&] {
        require(graph, "graph");
        require(theory, "theory");
        eqsat::IterationObserver hook;
        if (observer)
            hook = [&](std::size_t iteration, const eqsat::EGraph&) { observer(user, iteration, graph); };
        auto report = eqsat::run_saturation(graph->graph, theory->theory, to_params(params), hook);
        if (stop_reason)
            *stop_reason = to_c(report.stop_reason);
        if (report_json)
            *report_json = dup_string(eqsat::to_json(report).dump());
    });
}

eqsat_status eqsat_cost_ast_size(eqsat_cost** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new eqsat_cost{eqsat::AstSize{}};
    });
}

eqsat_status eqsat_cost_ast_depth(eqsat_cost** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new eqsat_cost{eqsat::AstDepth{}};
    });
}

eqsat_status eqsat_cost_weights_parse(const char* text, eqsat_cost** out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new eqsat_cost{eqsat::parse_op_weights(text)};
    });
}

eqsat_status eqsat_cost_weights_load(const char* path, eqsat_cost** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new eqsat_cost{eqsat::load_op_weights(path)};
    });
}

void eqsat_cost_free(eqsat_cost* cost)
{
    delete cost;
}

eqsat_status eqsat_extract(const eqsat_egraph* graph, eqsat_id root, const eqsat_cost* cost, char** term,
                           double* total_cost)
{
    return guarded([&] {
        require(graph, "graph");
        require(cost, "cost");
        require(term, "term");
        auto [best, c] = eqsat::extract_best(graph->graph, eqsat::EClassId{root}, cost->cost);
        *term = dup_string(eqsat::print_term(best));
        if (total_cost)
            *total_cost = c;
    });
}

eqsat_status eqsat_prove(eqsat_egraph* graph, const eqsat_theory* theory, const eqsat_params* params,
                         const char* lhs, const char* rhs, int* equal, eqsat_stop_reason* stop_reason,
                         char** report_json)
{
    return guarded([&] {
        require(graph, "graph");
        require(theory, "theory");
        require(lhs, "lhs");
        require(rhs, "rhs");
        require(equal, "equal");
        auto lhs_term = eqsat::parse_term(lhs);
        auto rhs_term = eqsat::parse_term(rhs);
        auto outcome = eqsat::prove_equal(graph->graph, theory->theory, to_params(params), lhs_term, rhs_term);
        *equal = outcome.result == eqsat::ProofResult::Equal ? 1 : 0;
        if (stop_reason)
            *stop_reason = to_c(outcome.report.stop_reason);
        if (report_json)
            *report_json = dup_string(eqsat::to_json(outcome.report).dump());
    });
}

eqsat_status eqsat_rewrite(const eqsat_theory* theory, const char* expr, uint64_t step_limit, int trace,
                           eqsat_rewrite_status* status, char** outcome_json)
{
    return guarded([&] {
        require(theory, "theory");
        require(expr, "expr");
        if (step_limit == 0)
            throw std::invalid_argument("step limit must be at least 1");
        auto outcome = eqsat::rewrite_fixpoint(eqsat::parse_term(expr), theory->theory, step_limit, trace != 0);
        if (status) {
            switch (outcome.status) {
            case eqsat::RewriteStatus::Fixpoint:
                *status = EQSAT_REWRITE_FIXPOINT;
                break;
            case eqsat::RewriteStatus::StepLimit:
                *status = EQSAT_REWRITE_STEP_LIMIT;
                break;
            case eqsat::RewriteStatus::CycleDetected:
                *status = EQSAT_REWRITE_CYCLE_DETECTED;
                break;
            }
        }
        if (outcome_json)
            *outcome_json = dup_string(eqsat::to_json(outcome).dump());
    });
}

} // extern "C"
