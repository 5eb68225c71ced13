#pragma once

#include "eqsat/egraph.hpp"
#include "eqsat/pattern.hpp"

#include <map>
#include <string>
#include <vector>

namespace eqsat {

struct EMatchSubst {
    EClassId root;
    std::map<std::string, EClassId> bindings;

    bool operator==(const EMatchSubst&) const = default;
};

/// All substitutions under which some term of `root` matches `p`. Results
/// follow e-node insertion order, then child order. Throws DirtyGraph.
std::vector<EMatchSubst> ematch(const EGraph& g, const Pattern& p, EClassId root);

/// `ematch` over every canonical class in ascending id order.
std::vector<EMatchSubst> ematch_all(const EGraph& g, const Pattern& p);

} // namespace eqsat
