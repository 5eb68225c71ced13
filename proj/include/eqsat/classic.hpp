#pragma once

#include "eqsat/rules.hpp"
#include "eqsat/term.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqsat {

/// Child indices from the root, outermost first.
using Position = std::vector<std::size_t>;

struct RewriteStep {
    std::string rule;
    Position position;
    Term before;
    Term after;
};

enum class RewriteStatus { Fixpoint, StepLimit, CycleDetected };

std::string_view rewrite_status_name(RewriteStatus s);

struct RewriteOutcome {
    Term result;
    RewriteStatus status;
    std::size_t steps = 0;
    /// Whole-term before/after pairs, filled when tracing was requested.
    std::vector<RewriteStep> trace;
};

/// One destructive step: the first rule of the theory that applies
/// anywhere, at its leftmost-outermost (pre-order) position.
std::optional<RewriteStep> rewrite_once(const Term& t, const Theory& th);

/// Applies `rewrite_once` until nothing applies, `step_limit` steps were
/// taken, or a term repeats.
RewriteOutcome rewrite_fixpoint(const Term& t, const Theory& th, std::size_t step_limit, bool trace = false);

} // namespace eqsat
