#include "eqsat/saturate.hpp"

#include "eqsat/error.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace eqsat {

void SaturationParams::validate() const
{
    if (iter_limit == 0 || node_limit == 0 || time_limit_ms == 0 || match_limit == 0 || ban_length == 0)
        throw std::invalid_argument("saturation limits must be at least 1");
}

std::string_view stop_reason_name(StopReason r)
{
    switch (r) {
    case StopReason::Saturated:
        return "Saturated";
    case StopReason::IterLimit:
        return "IterLimit";
    case StopReason::NodeLimit:
        return "NodeLimit";
    case StopReason::TimeLimit:
        return "TimeLimit";
    case StopReason::GoalReached:
        return "GoalReached";
    }
    return "?";
}

std::string_view scheduler_name(Scheduler s)
{
    return s == Scheduler::Simple ? "simple" : "backoff";
}

std::optional<Scheduler> scheduler_from_name(std::string_view name)
{
    if (name == "simple")
        return Scheduler::Simple;
    if (name == "backoff")
        return Scheduler::Backoff;
    return std::nullopt;
}

std::vector<RuleStats> SaturationReport::per_rule() const
{
    std::vector<RuleStats> totals;
    for (const IterationStats& it : per_iteration) {
        if (totals.empty()) {
            for (const RuleStats& r : it.rules)
                totals.push_back(RuleStats{r.rule});
        }
        for (std::size_t i = 0; i < it.rules.size(); ++i) {
            totals[i].matches += it.rules[i].matches;
            totals[i].applied += it.rules[i].applied;
            totals[i].filtered += it.rules[i].filtered;
        }
    }
    return totals;
}

EClassId instantiate_in(EGraph& g, const Pattern& rhs, const std::map<std::string, EClassId>& bindings)
{
    switch (rhs.kind()) {
    case Pattern::Kind::Var: {
        auto it = bindings.find(rhs.var_name());
        if (it == bindings.end())
            throw UnboundVariable(rhs.var_name());
        return g.find(it->second);
    }
    case Pattern::Kind::Lit:
        return g.add_node(ENode::leaf(rhs.atom()));
    case Pattern::Kind::Apply: {
        ENode node{rhs.op(), {}};
        node.children.reserve(rhs.args().size());
        for (const Pattern& a : rhs.args())
            node.children.push_back(instantiate_in(g, a, bindings));
        return g.add_node(std::move(node));
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::optional<Atom> literal_of(const EGraph& g, EClassId cls)
{
    const ConstFoldValue& v = g.data(cls);
    if (v.is_known())
        return v.value();
    for (const ClassNode& cn : g.eclass(cls).nodes) {
        auto atom = cn.node.atom();
        if (atom && (atom->kind() == Atom::Kind::Int || atom->kind() == Atom::Kind::Bool))
            return atom;
    }
    return std::nullopt;
}

// Right-hand side class for one match, or nullopt when the match is filtered.
std::optional<EClassId> apply_rhs(EGraph& g, const Rule& rule, const EMatchSubst& m)
{
    for (const Guard& guard : rule.guards)
        if (!check_guard_eclass(guard, m, g))
            return std::nullopt;

    if (!rule.is_dynamic())
        return instantiate_in(g, rule.rhs_pattern(), m.bindings);

    std::map<std::string, Atom> literals;
    for (const auto& name : rule.rhs_dynamic().args) {
        auto it = m.bindings.find(name);
        if (it == m.bindings.end())
            throw UnboundVariable(name);
        auto lit = literal_of(g, g.find(it->second));
        if (!lit)
            return std::nullopt;
        literals.emplace(name, *lit);
    }
    auto folded = eval_dynamic(rule.rhs_dynamic(), literals);
    if (!folded)
        return std::nullopt;
    return g.add_node(ENode::leaf(folded->atom()));
}

using Goal = std::function<bool(const EGraph&)>;

SaturationReport saturate(EGraph& g, const Theory& th, const SaturationParams& params,
                          const IterationObserver& observer, const Goal& goal)
{
    params.validate();
    if (!g.is_clean())
        throw DirtyGraph();

    const std::vector<Rule> rules = expand_rules(th);
    // last iteration (inclusive) during which each rule is skipped
    std::vector<std::size_t> banned_until(rules.size(), 0);
    const auto start = Clock::now();
    const auto out_of_time = [&] { return millis_since(start) >= static_cast<double>(params.time_limit_ms); };

    SaturationReport report;
    for (std::size_t iter = 1;; ++iter) {
        if (iter > params.iter_limit) {
            report.stop_reason = StopReason::IterLimit;
            break;
        }
        const auto iter_start = Clock::now();
        const std::uint64_t version_before = g.version();
        IterationStats stats;
        stats.rules.resize(rules.size());

        // read phase: every match is computed against the same snapshot
        std::vector<std::vector<EMatchSubst>> matches(rules.size());
        bool skipped_any = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            stats.rules[i].rule = rules[i].name;
            if (params.scheduler == Scheduler::Backoff && banned_until[i] >= iter) {
                stats.rules[i].banned = true;
                skipped_any = true;
                continue;
            }
            matches[i] = ematch_all(g, rules[i].lhs);
            stats.rules[i].matches = matches[i].size();
            if (params.scheduler == Scheduler::Backoff && matches[i].size() > params.match_limit)
                banned_until[i] = iter + params.ban_length;
        }

        // write phase
        bool hit_nodes = false;
        bool hit_time = false;
        try {
            for (std::size_t i = 0; i < rules.size() && !hit_nodes && !hit_time; ++i) {
                for (const EMatchSubst& m : matches[i]) {
                    if (g.node_count() > params.node_limit) {
                        hit_nodes = true;
                        break;
                    }
                    auto rhs = apply_rhs(g, rules[i], m);
                    if (!rhs) {
                        ++stats.rules[i].filtered;
                        continue;
                    }
                    g.merge(m.root, *rhs);
                    ++stats.rules[i].applied;
                }
                hit_time = out_of_time();
            }
        } catch (const CapacityError&) {
            hit_nodes = true;
        }
        g.rebuild();

        stats.changed = g.version() != version_before;
        stats.enodes = g.node_count();
        stats.eclasses = g.class_count();
        stats.time_ms = millis_since(iter_start);
        report.per_iteration.push_back(std::move(stats));
        report.iterations = iter;
        if (observer)
            observer(iter, g);

        const IterationStats& last = report.per_iteration.back();
        if (goal && goal(g)) {
            report.stop_reason = StopReason::GoalReached;
            break;
        }
        if (!last.changed && !hit_nodes && !hit_time) {
            if (skipped_any) {
                // confirm with every rule active before claiming saturation
                std::fill(banned_until.begin(), banned_until.end(), 0);
                continue;
            }
            report.stop_reason = StopReason::Saturated;
            break;
        }
        if (hit_nodes || g.node_count() > params.node_limit) {
            report.stop_reason = StopReason::NodeLimit;
            break;
        }
        if (hit_time || out_of_time()) {
            report.stop_reason = StopReason::TimeLimit;
            break;
        }
    }

    g.modify_all();
    report.enodes = g.node_count();
    report.eclasses = g.class_count();
    report.time_ms = millis_since(start);
    return report;
}

} // namespace

SaturationReport run_saturation(EGraph& g, const Theory& th, const SaturationParams& params,
                                const IterationObserver& observer)
{
    return saturate(g, th, params, observer, {});
}

ProofOutcome prove_equal(EGraph& g, const Theory& th, const SaturationParams& params, const Term& lhs,
                         const Term& rhs)
{
    params.validate();
    if (!g.is_clean())
        g.rebuild();
    EClassId a = g.add_term(lhs);
    EClassId b = g.add_term(rhs);
    auto same = [&](const EGraph& graph) { return graph.find(a) == graph.find(b); };
    if (same(g)) {
        SaturationReport report;
        report.stop_reason = StopReason::GoalReached;
        report.enodes = g.node_count();
        report.eclasses = g.class_count();
        return {ProofResult::Equal, std::move(report)};
    }
    SaturationReport report = saturate(g, th, params, {}, same);
    return {same(g) ? ProofResult::Equal : ProofResult::Unknown, std::move(report)};
}

} // namespace eqsat
