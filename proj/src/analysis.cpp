#include "eqsat/analysis.hpp"

#include "eqsat/egraph.hpp"
#include "eqsat/error.hpp"
#include "eqsat/fold.hpp"

#include <stdexcept>

namespace eqsat {

ConstFoldValue ConstFoldValue::known(Atom atom)
{
    if (atom.kind() != Atom::Kind::Int && atom.kind() != Atom::Kind::Bool)
        throw std::invalid_argument("only integer and boolean constants are tracked");
    ConstFoldValue v;
    v.value_ = std::move(atom);
    return v;
}

std::string ConstFoldValue::to_string() const
{
    return value_ ? "Known(" + value_->to_string() + ")" : "Unknown";
}

ConstFoldValue analysis_join(const ConstFoldValue& a, const ConstFoldValue& b)
{
    auto joined = ConstFoldAnalysis{}.join(a, b);
    if (!joined)
        throw AnalysisInconsistency("analysis inconsistency: " + a.to_string() + " joined with " + b.to_string(), 0);
    return *joined;
}

ConstFoldValue ConstFoldAnalysis::make(const EGraph& graph, const ENode& node) const
{
    if (node.is_leaf()) {
        auto atom = node.atom();
        if (atom->kind() == Atom::Kind::Int || atom->kind() == Atom::Kind::Bool)
            return ConstFoldValue::known(*atom);
        return {};
    }
    auto op = fold_op_from_name(node.op);
    if (!op || fold_op_arity(*op) != node.children.size())
        return {};
    std::vector<Atom> args;
    args.reserve(node.children.size());
    for (EClassId c : node.children) {
        const ConstFoldValue& v = graph.data(c);
        if (!v.is_known())
            return {};
        args.push_back(v.value());
    }
    if (auto folded = eval_fold(*op, args))
        return ConstFoldValue::known(std::move(*folded));
    return {};
}

std::optional<ConstFoldValue> ConstFoldAnalysis::join(const ConstFoldValue& a, const ConstFoldValue& b) const
{
    if (!a.is_known())
        return b;
    if (!b.is_known())
        return a;
    if (a.value() == b.value())
        return a;
    return std::nullopt;
}

void ConstFoldAnalysis::modify(EGraph& graph, EClassId id) const
{
    const ConstFoldValue& v = graph.data(id);
    if (!v.is_known())
        return;
    ENode leaf = ENode::leaf(v.value());
    if (auto existing = graph.lookup(leaf); existing && *existing == graph.find(id))
        return;
    EClassId leaf_class = graph.add_node(std::move(leaf));
    graph.merge(id, leaf_class);
}

ConstFoldValue NoAnalysis::make(const EGraph&, const ENode&) const
{
    return {};
}

std::optional<ConstFoldValue> NoAnalysis::join(const ConstFoldValue&, const ConstFoldValue&) const
{
    return ConstFoldValue{};
}

void NoAnalysis::modify(EGraph&, EClassId) const {}

std::shared_ptr<const AnalysisDomain> const_fold_analysis()
{
    static const auto instance = std::make_shared<const ConstFoldAnalysis>();
    return instance;
}

std::shared_ptr<const AnalysisDomain> no_analysis()
{
    static const auto instance = std::make_shared<const NoAnalysis>();
    return instance;
}

ConstFoldValue analysis_make(const EGraph& graph, const ENode& node)
{
    return graph.analysis().make(graph, graph.canonicalize(node));
}

void analysis_modify(EGraph& graph, EClassId id)
{
    graph.analysis().modify(graph, id);
}

} // namespace eqsat
