#pragma once

#include "eqsat/egraph.hpp"
#include "eqsat/term.hpp"

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>

namespace eqsat {

struct AstSize {};
struct AstDepth {};
/// Node cost = weight(op) + sum of child costs. Leaves are looked up by
/// their printed atom; missing entries weigh `default_weight`.
struct OpWeights {
    std::map<std::string, double> weights;
    double default_weight = 1.0;

    double weight(const std::string& op) const;
};

using CostFunction = std::variant<AstSize, AstDepth, OpWeights>;

/// `<op> <weight>` per line, `#` comments. Weights must be positive.
OpWeights parse_op_weights(std::string_view text);
OpWeights load_op_weights(const std::string& path);

/// Cost of a concrete term under `cf`.
double term_cost(const Term& t, const CostFunction& cf);

struct BestNode {
    ENode node;
    std::size_t index;
    double cost;
};

/// Cheapest node per canonical class. Classes that only reach cycles are
/// absent.
class Extraction {
public:
    const std::unordered_map<EClassId, BestNode>& table() const noexcept { return best_; }
    const BestNode* best(EClassId canonical) const;

    /// Rebuilds the chosen term top-down. Throws Unextractable.
    Term term(const EGraph& g, EClassId root) const;

private:
    friend Extraction extract_analysis(const EGraph& g, const CostFunction& cf);
    std::unordered_map<EClassId, BestNode> best_;
};

/// Relaxes node costs to a fixpoint. Ties prefer the lower insertion index.
Extraction extract_analysis(const EGraph& g, const CostFunction& cf);

/// Best term for `root` with its cost. Throws Unextractable or DirtyGraph.
std::pair<Term, double> extract_best(const EGraph& g, EClassId root, const CostFunction& cf);

} // namespace eqsat
