// eqsat command-line driver. Talks to the engine only through the C API.

#include "eqsat/eqsat.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInconsistent = 2,
    kUnknown = 3,
    kNoFixpoint = 4,
};

struct TheoryDeleter {
    void operator()(eqsat_theory* t) const { eqsat_theory_free(t); }
};
struct GraphDeleter {
    void operator()(eqsat_egraph* g) const { eqsat_egraph_free(g); }
};
struct CostDeleter {
    void operator()(eqsat_cost* c) const { eqsat_cost_free(c); }
};
struct StringDeleter {
    void operator()(char* s) const { eqsat_string_free(s); }
};
using TheoryPtr = std::unique_ptr<eqsat_theory, TheoryDeleter>;
using GraphPtr = std::unique_ptr<eqsat_egraph, GraphDeleter>;
using CostPtr = std::unique_ptr<eqsat_cost, CostDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

/// Carries the exit code out of a failed API call.
struct Failure {
    int code;
};

void check(eqsat_status status)
{
    if (status == EQSAT_OK)
        return;
    std::cerr << "error: " << eqsat_last_error() << "\n";
    throw Failure{status == EQSAT_ERR_INCONSISTENT ? kInconsistent : kUsage};
}

struct Config {
    std::string theory_path;
    std::string expr;
    std::string expr2;
    std::string cost = "ast-size";
    std::uint64_t iters = 0;
    std::uint64_t nodes = 0;
    std::uint64_t time_ms = 0;
    std::string scheduler = "simple";
    bool json = false;
    std::string dot_dir;
    bool trace = false;
    std::uint64_t steps = 1000;
};

TheoryPtr load_theory(const Config& cfg)
{
    eqsat_theory* raw = nullptr;
    if (cfg.theory_path.empty())
        check(eqsat_theory_parse("theory empty\n", &raw));
    else
        check(eqsat_theory_load(cfg.theory_path.c_str(), &raw));
    return TheoryPtr(raw);
}

eqsat_params make_params(const Config& cfg)
{
    eqsat_params p;
    eqsat_params_default(&p);
    if (cfg.iters)
        p.iter_limit = cfg.iters;
    if (cfg.nodes)
        p.node_limit = cfg.nodes;
    if (cfg.time_ms)
        p.time_limit_ms = cfg.time_ms;
    p.scheduler = cfg.scheduler == "backoff" ? EQSAT_SCHEDULER_BACKOFF : EQSAT_SCHEDULER_SIMPLE;
    return p;
}

ordered_json params_json(const eqsat_params& p)
{
    return {{"iters", p.iter_limit},
            {"nodes", p.node_limit},
            {"time_ms", p.time_limit_ms},
            {"scheduler", p.scheduler == EQSAT_SCHEDULER_BACKOFF ? "backoff" : "simple"},
            {"match_limit", p.match_limit},
            {"ban_length", p.ban_length}};
}

CostPtr make_cost(const std::string& name)
{
    eqsat_cost* raw = nullptr;
    if (name == "ast-size")
        check(eqsat_cost_ast_size(&raw));
    else if (name == "ast-depth")
        check(eqsat_cost_ast_depth(&raw));
    else
        check(eqsat_cost_weights_load(name.c_str(), &raw));
    return CostPtr(raw);
}

GraphPtr new_graph()
{
    eqsat_egraph* raw = nullptr;
    check(eqsat_egraph_new(EQSAT_ANALYSIS_CONST_FOLD, &raw));
    return GraphPtr(raw);
}

std::string stop_reason_text(const std::string& report_json)
{
    return ordered_json::parse(report_json).at("stop_reason").get<std::string>();
}

struct SnapshotWriter {
    fs::path dir;

    static void on_iteration(void* user, size_t iteration, const eqsat_egraph* graph)
    {
        static_cast<SnapshotWriter*>(user)->write(iteration, graph);
    }

    void write(std::size_t index, const eqsat_egraph* graph) const
    {
        char* raw = nullptr;
        check(eqsat_egraph_dot(graph, &raw));
        OwnedString dot(raw);
        char name[32];
        std::snprintf(name, sizeof name, "snap-%03zu.dot", index);
        std::ofstream out(dir / name, std::ios::binary);
        out << dot.get();
        if (!out) {
            std::cerr << "error: cannot write " << (dir / name).string() << "\n";
            throw Failure{kUsage};
        }
    }
};

int cmd_simplify(const Config& cfg)
{
    TheoryPtr theory = load_theory(cfg);
    CostPtr cost = make_cost(cfg.cost);
    eqsat_params params = make_params(cfg);
    GraphPtr graph = new_graph();
    eqsat_id root = 0;
    check(eqsat_egraph_add_term(graph.get(), cfg.expr.c_str(), &root));

    std::optional<SnapshotWriter> snapshots;
    if (!cfg.dot_dir.empty()) {
        std::error_code ec;
        fs::create_directories(cfg.dot_dir, ec);
        if (ec) {
            std::cerr << "error: cannot create " << cfg.dot_dir << ": " << ec.message() << "\n";
            return kUsage;
        }
        snapshots = SnapshotWriter{cfg.dot_dir};
        snapshots->write(0, graph.get());
    }

    eqsat_stop_reason stop = EQSAT_STOP_SATURATED;
    char* raw_report = nullptr;
    check(eqsat_saturate(graph.get(), theory.get(), &params, snapshots ? &SnapshotWriter::on_iteration : nullptr,
                         snapshots ? &*snapshots : nullptr, &stop, &raw_report));
    OwnedString report(raw_report);

    char* raw_term = nullptr;
    double total = 0;
    check(eqsat_egraph_find(graph.get(), root, &root));
    check(eqsat_extract(graph.get(), root, cost.get(), &raw_term, &total));
    OwnedString term(raw_term);

    if (cfg.json) {
        ordered_json out;
        out["version"] = 1;
        out["result"] = term.get();
        out["cost"] = total;
        out["params"] = params_json(params);
        out["report"] = ordered_json::parse(report.get());
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << term.get() << "\n";
    }
    return kOk;
}

int cmd_check(const Config& cfg)
{
    TheoryPtr theory = load_theory(cfg);
    eqsat_params params = make_params(cfg);
    GraphPtr graph = new_graph();
    int equal = 0;
    char* raw_report = nullptr;
    check(eqsat_prove(graph.get(), theory.get(), &params, cfg.expr.c_str(), cfg.expr2.c_str(), &equal, nullptr,
                      &raw_report));
    OwnedString report(raw_report);
    std::string reason = stop_reason_text(report.get());

    if (cfg.json) {
        ordered_json out;
        out["version"] = 1;
        out["result"] = equal ? "equal" : "unknown";
        out["stop_reason"] = reason;
        out["params"] = params_json(params);
        out["report"] = ordered_json::parse(report.get());
        std::cout << out.dump(2) << "\n";
    } else if (equal) {
        std::cout << "equal\n";
    } else {
        std::cout << "unknown (" << reason << ")\n";
    }
    return equal ? kOk : kUnknown;
}

std::string path_text(const ordered_json& path)
{
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i)
            out += " ";
        out += std::to_string(path[i].get<std::size_t>());
    }
    return out + "]";
}

int cmd_classic(const Config& cfg)
{
    TheoryPtr theory = load_theory(cfg);
    eqsat_rewrite_status status = EQSAT_REWRITE_FIXPOINT;
    char* raw = nullptr;
    check(eqsat_rewrite(theory.get(), cfg.expr.c_str(), cfg.steps, cfg.trace ? 1 : 0, &status, &raw));
    OwnedString outcome_text(raw);
    auto outcome = ordered_json::parse(outcome_text.get());

    if (cfg.json) {
        std::cout << outcome.dump(2) << "\n";
    } else {
        for (const auto& row : outcome.at("trace")) {
            std::cout << row.at("step").get<std::size_t>() << ": " << row.at("rule").get<std::string>() << " @ "
                      << path_text(row.at("path")) << " " << row.at("before").get<std::string>() << " => "
                      << row.at("after").get<std::string>() << "\n";
        }
        std::cout << outcome.at("result").get<std::string>() << "\n"
                  << outcome.at("status").get<std::string>() << " after " << outcome.at("steps").get<std::size_t>()
                  << " step(s)\n";
    }
    return status == EQSAT_REWRITE_FIXPOINT ? kOk : kNoFixpoint;
}

int cmd_dot(const Config& cfg)
{
    TheoryPtr theory = load_theory(cfg);
    eqsat_params params = make_params(cfg);
    GraphPtr graph = new_graph();
    check(eqsat_egraph_add_term(graph.get(), cfg.expr.c_str(), nullptr));
    if (eqsat_theory_rule_count(theory.get()) > 0)
        check(eqsat_saturate(graph.get(), theory.get(), &params, nullptr, nullptr, nullptr, nullptr));
    char* raw = nullptr;
    check(eqsat_egraph_dot(graph.get(), &raw));
    OwnedString dot(raw);
    std::cout << dot.get();
    return kOk;
}

void add_common(CLI::App* cmd, Config& cfg)
{
    cmd->add_option("--theory", cfg.theory_path, "Theory file (default: no rules)");
    cmd->add_option("--expr", cfg.expr, "Input expression (s-expression)")->required();
    cmd->add_flag("--json", cfg.json, "Emit JSON instead of plain text");
}

void add_saturation(CLI::App* cmd, Config& cfg)
{
    cmd->add_option("--iters", cfg.iters, "Iteration limit (default 30)")->check(CLI::PositiveNumber);
    cmd->add_option("--nodes", cfg.nodes, "E-node limit (default 10000)")->check(CLI::PositiveNumber);
    cmd->add_option("--time-ms", cfg.time_ms, "Wall-clock limit in ms (default 5000)")->check(CLI::PositiveNumber);
    cmd->add_option("--scheduler", cfg.scheduler, "Rule scheduler")->check(CLI::IsMember({"simple", "backoff"}));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Term rewriting by classic fixpoint rewriting or e-graph equality saturation"};
    app.require_subcommand(1);
    Config cfg;

    auto* simplify = app.add_subcommand("simplify", "Saturate an expression and extract the cheapest equivalent");
    add_common(simplify, cfg);
    add_saturation(simplify, cfg);
    simplify->add_option("--cost", cfg.cost, "ast-size, ast-depth, or a weights file");
    simplify->add_option("--dot", cfg.dot_dir, "Write one DOT snapshot per iteration into this directory");

    auto* check_cmd = app.add_subcommand("check", "Try to prove two expressions equal");
    add_common(check_cmd, cfg);
    add_saturation(check_cmd, cfg);
    check_cmd->add_option("--expr2", cfg.expr2, "Second expression")->required();

    auto* classic = app.add_subcommand("classic", "Rewrite destructively to a fixpoint");
    add_common(classic, cfg);
    classic->add_flag("--trace", cfg.trace, "Print every rewrite step");
    classic->add_option("--steps", cfg.steps, "Step limit (default 1000)")->check(CLI::PositiveNumber);

    auto* dot = app.add_subcommand("dot", "Print the (saturated) e-graph as Graphviz DOT");
    add_common(dot, cfg);
    add_saturation(dot, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simplify)
            return cmd_simplify(cfg);
        if (*check_cmd)
            return cmd_check(cfg);
        if (*classic)
            return cmd_classic(cfg);
        return cmd_dot(cfg);
    } catch (const Failure& f) {
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
