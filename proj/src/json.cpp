#include "eqsat/json.hpp"

namespace eqsat {

using nlohmann::ordered_json;

ordered_json to_json(const SaturationParams& params)
{
    ordered_json j;
    j["iters"] = params.iter_limit;
    j["nodes"] = params.node_limit;
    j["time_ms"] = params.time_limit_ms;
    j["scheduler"] = scheduler_name(params.scheduler);
    j["match_limit"] = params.match_limit;
    j["ban_length"] = params.ban_length;
    return j;
}

ordered_json to_json(const SaturationReport& report)
{
    ordered_json j;
    j["version"] = kReportVersion;
    j["stop_reason"] = stop_reason_name(report.stop_reason);
    j["iterations"] = report.iterations;
    j["enodes"] = report.enodes;
    j["eclasses"] = report.eclasses;
    j["time_ms"] = report.time_ms;

    ordered_json per_rule = ordered_json::object();
    for (const RuleStats& r : report.per_rule())
        per_rule[r.rule] = {{"matches", r.matches}, {"applied", r.applied}, {"filtered", r.filtered}};
    j["per_rule"] = std::move(per_rule);

    ordered_json iterations = ordered_json::array();
    for (std::size_t i = 0; i < report.per_iteration.size(); ++i) {
        const IterationStats& it = report.per_iteration[i];
        ordered_json row;
        row["iteration"] = i + 1;
        row["enodes"] = it.enodes;
        row["eclasses"] = it.eclasses;
        row["time_ms"] = it.time_ms;
        row["changed"] = it.changed;
        ordered_json applied = ordered_json::object();
        for (const RuleStats& r : it.rules)
            applied[r.rule] = {{"matches", r.matches}, {"applied", r.applied}, {"filtered", r.filtered},
                               {"banned", r.banned}};
        row["rules"] = std::move(applied);
        iterations.push_back(std::move(row));
    }
    j["per_iteration"] = std::move(iterations);
    return j;
}

ordered_json to_json(const RewriteOutcome& outcome)
{
    ordered_json j;
    j["version"] = kReportVersion;
    j["result"] = print_term(outcome.result);
    j["status"] = rewrite_status_name(outcome.status);
    j["steps"] = outcome.steps;
    ordered_json trace = ordered_json::array();
    for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
        const RewriteStep& s = outcome.trace[i];
        trace.push_back({{"step", i + 1},
                         {"rule", s.rule},
                         {"path", s.position},
                         {"before", print_term(s.before)},
                         {"after", print_term(s.after)}});
    }
    j["trace"] = std::move(trace);
    return j;
}

} // namespace eqsat
