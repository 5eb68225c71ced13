#pragma once

#include "eqsat/egraph.hpp"
#include "eqsat/rules.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqsat {

enum class Scheduler { Simple, Backoff };

struct SaturationParams {
    std::size_t iter_limit = 30;
    std::size_t node_limit = 10000;
    std::uint64_t time_limit_ms = 5000;
    Scheduler scheduler = Scheduler::Simple;
    /// Backoff: a rule yielding more matches than this in one iteration...
    std::size_t match_limit = 1000;
    /// ...contributes nothing for this many following iterations.
    std::size_t ban_length = 5;

    /// Throws std::invalid_argument if any limit is zero.
    void validate() const;
};

/// GoalReached is produced only by prove_equal's early exit.
enum class StopReason { Saturated, IterLimit, NodeLimit, TimeLimit, GoalReached };

std::string_view stop_reason_name(StopReason r);
std::string_view scheduler_name(Scheduler s);
std::optional<Scheduler> scheduler_from_name(std::string_view name);

struct RuleStats {
    std::string rule;
    std::size_t matches = 0;
    std::size_t applied = 0;
    /// Rejected by a guard, or a fold that was undefined on its inputs.
    std::size_t filtered = 0;
    bool banned = false;
};

struct IterationStats {
    std::vector<RuleStats> rules;
    std::size_t enodes = 0;
    std::size_t eclasses = 0;
    double time_ms = 0;
    bool changed = false;
};

struct SaturationReport {
    StopReason stop_reason = StopReason::Saturated;
    std::size_t iterations = 0;
    std::vector<IterationStats> per_iteration;
    std::size_t enodes = 0;
    std::size_t eclasses = 0;
    double time_ms = 0;

    /// Totals per expanded rule, in rule order.
    std::vector<RuleStats> per_rule() const;
};

/// Called after each iteration's rebuild with the 1-based iteration number.
using IterationObserver = std::function<void(std::size_t iteration, const EGraph& g)>;

/// Equality saturation: per iteration, collect every match of every active
/// rule against the current graph, then apply them in rule order, then
/// rebuild. Stops when an unthrottled iteration changes nothing, or on a
/// limit. Throws DirtyGraph on entry and AnalysisInconsistency if the
/// theory merges two distinct constants.
SaturationReport run_saturation(EGraph& g, const Theory& th, const SaturationParams& params,
                                const IterationObserver& observer = {});

/// Instantiates `rhs` with pattern variables bound to classes. Returns the
/// class of the root.
EClassId instantiate_in(EGraph& g, const Pattern& rhs, const std::map<std::string, EClassId>& bindings);

enum class ProofResult { Equal, Unknown };

struct ProofOutcome {
    ProofResult result;
    SaturationReport report;
};

/// Adds both terms and saturates, stopping early once their classes meet.
ProofOutcome prove_equal(EGraph& g, const Theory& th, const SaturationParams& params, const Term& lhs,
                         const Term& rhs);

} // namespace eqsat
