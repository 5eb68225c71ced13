#include "eqsat/classic.hpp"

#include <unordered_set>

namespace eqsat {

std::string_view rewrite_status_name(RewriteStatus s)
{
    switch (s) {
    case RewriteStatus::Fixpoint:
        return "Fixpoint";
    case RewriteStatus::StepLimit:
        return "StepLimit";
    case RewriteStatus::CycleDetected:
        return "CycleDetected";
    }
    return "?";
}

namespace {

std::optional<Term> apply_at(const Rule& rule, const Term& sub)
{
    auto subst = match_term(rule.lhs, sub);
    if (!subst)
        return std::nullopt;
    for (const Guard& g : rule.guards)
        if (!check_guard_term(g, *subst))
            return std::nullopt;
    if (!rule.is_dynamic())
        return instantiate(rule.rhs_pattern(), *subst);

    std::map<std::string, Atom> literals;
    for (const auto& name : rule.rhs_dynamic().args) {
        const Term& bound = subst->at(name);
        if (!bound.is_leaf())
            return std::nullopt;
        literals.emplace(name, bound.atom());
    }
    return eval_dynamic(rule.rhs_dynamic(), literals);
}

// Pre-order search; on success `path` holds the rewritten position.
std::optional<Term> rewrite_first(const Rule& rule, const Term& t, Position& path)
{
    if (auto out = apply_at(rule, t))
        return out;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i);
        if (auto sub = rewrite_first(rule, t.args()[i], path)) {
            std::vector<Term> args(t.args().begin(), t.args().end());
            args[i] = std::move(*sub);
            return Term::apply(t.op(), std::move(args));
        }
        path.pop_back();
    }
    return std::nullopt;
}

} // namespace

std::optional<RewriteStep> rewrite_once(const Term& t, const Theory& th)
{
    for (const Rule& rule : expand_rules(th)) {
        Position path;
        if (auto out = rewrite_first(rule, t, path))
            return RewriteStep{rule.name, std::move(path), t, std::move(*out)};
    }
    return std::nullopt;
}

RewriteOutcome rewrite_fixpoint(const Term& t, const Theory& th, std::size_t step_limit, bool trace)
{
    RewriteOutcome out{t, RewriteStatus::Fixpoint, 0, {}};
    std::unordered_set<std::string> history{print_term(t)};
    for (;;) {
        auto step = rewrite_once(out.result, th);
        if (!step)
            return out;
        if (out.steps >= step_limit) {
            out.status = RewriteStatus::StepLimit;
            return out;
        }
        out.result = step->after;
        ++out.steps;
        bool repeated = !history.insert(print_term(out.result)).second;
        if (trace)
            out.trace.push_back(std::move(*step));
        if (repeated) {
            out.status = RewriteStatus::CycleDetected;
            return out;
        }
    }
}

} // namespace eqsat
