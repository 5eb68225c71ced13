#include "eqsat/extract.hpp"

#include "eqsat/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqsat {

double OpWeights::weight(const std::string& op) const
{
    auto it = weights.find(op);
    return it == weights.end() ? default_weight : it->second;
}

OpWeights parse_op_weights(std::string_view text)
{
    OpWeights w;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream fields(line);
        std::string op, weight, extra;
        if (!(fields >> op))
            continue;
        if (!(fields >> weight) || (fields >> extra))
            throw SyntaxError("weights line " + std::to_string(line_no) + ": expected `<op> <weight>`", 0, line_no);
        double v = 0;
        auto [ptr, ec] = std::from_chars(weight.data(), weight.data() + weight.size(), v);
        if (ec != std::errc() || ptr != weight.data() + weight.size() || !std::isfinite(v) || v <= 0)
            throw SyntaxError("weights line " + std::to_string(line_no) + ": weight must be a positive number", 0,
                              line_no);
        w.weights[op] = v;
    }
    return w;
}

OpWeights load_op_weights(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open weights file `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_op_weights(buf.str());
}

namespace {

double node_cost(const CostFunction& cf, const std::string& label, std::span<const double> children)
{
    if (std::holds_alternative<AstDepth>(cf)) {
        double d = 0;
        for (double c : children)
            d = std::max(d, c);
        return d + 1;
    }
    double sum = 0;
    for (double c : children)
        sum += c;
    if (const auto* w = std::get_if<OpWeights>(&cf))
        return w->weight(label) + sum;
    return 1 + sum;
}

} // namespace

double term_cost(const Term& t, const CostFunction& cf)
{
    std::vector<double> children;
    for (const Term& a : t.args())
        children.push_back(term_cost(a, cf));
    return node_cost(cf, t.is_leaf() ? t.atom().to_string() : t.op(), children);
}

const BestNode* Extraction::best(EClassId canonical) const
{
    auto it = best_.find(canonical);
    return it == best_.end() ? nullptr : &it->second;
}

Term Extraction::term(const EGraph& g, EClassId root) const
{
    root = g.find(root);
    const BestNode* b = best(root);
    if (!b)
        throw Unextractable(root.value);
    if (b->node.is_leaf())
        return Term::leaf(*b->node.atom());
    std::vector<Term> args;
    args.reserve(b->node.children.size());
    // every child of a best node has strictly smaller cost, so this terminates
    for (EClassId c : b->node.children)
        args.push_back(term(g, c));
    return Term::apply(b->node.op, std::move(args));
}

Extraction extract_analysis(const EGraph& g, const CostFunction& cf)
{
    if (!g.is_clean())
        throw DirtyGraph();
    Extraction ex;
    auto& best = ex.best_;
    const auto ids = g.class_ids();
    std::vector<double> child_costs;

    bool changed = true;
    while (changed) {
        changed = false;
        for (EClassId id : ids) {
            for (const ClassNode& cn : g.eclass(id).nodes) {
                child_costs.clear();
                bool ready = true;
                for (EClassId c : cn.node.children) {
                    auto it = best.find(g.find(c));
                    if (it == best.end()) {
                        ready = false;
                        break;
                    }
                    child_costs.push_back(it->second.cost);
                }
                if (!ready)
                    continue;
                double cost = node_cost(cf, cn.node.label(), child_costs);
                auto it = best.find(id);
                if (it == best.end()) {
                    best.emplace(id, BestNode{cn.node, cn.index, cost});
                    changed = true;
                } else if (cost < it->second.cost || (cost == it->second.cost && cn.index < it->second.index)) {
                    it->second = BestNode{cn.node, cn.index, cost};
                    changed = true;
                }
            }
        }
    }
    return ex;
}

std::pair<Term, double> extract_best(const EGraph& g, EClassId root, const CostFunction& cf)
{
    Extraction ex = extract_analysis(g, cf);
    root = g.find(root);
    const BestNode* b = ex.best(root);
    if (!b)
        throw Unextractable(root.value);
    return {ex.term(g, root), b->cost};
}

} // namespace eqsat
