#include "eqsat/ematch.hpp"

#include "eqsat/error.hpp"

#include <functional>

namespace eqsat {

namespace {

using Bindings = std::map<std::string, EClassId>;
using Continuation = std::function<void(Bindings&)>;

// Each pattern level consumes one e-node level, so recursion is bounded by
// the pattern depth even when the graph has cycles.
class Matcher {
public:
    explicit Matcher(const EGraph& g) : g_(g) {}

    void match(const Pattern& p, EClassId cls, Bindings& b, const Continuation& k) const
    {
        switch (p.kind()) {
        case Pattern::Kind::Var: {
            auto it = b.find(p.var_name());
            if (it != b.end()) {
                if (it->second == cls)
                    k(b);
                return;
            }
            b.emplace(p.var_name(), cls);
            k(b);
            b.erase(p.var_name());
            return;
        }
        case Pattern::Kind::Lit: {
            auto leaf = g_.lookup(ENode::leaf(p.atom()));
            if (leaf && *leaf == cls)
                k(b);
            return;
        }
        case Pattern::Kind::Apply:
            for (const ClassNode& cn : g_.eclass(cls).nodes) {
                const ENode& n = cn.node;
                if (n.op != p.op() || n.children.size() != p.args().size())
                    continue;
                match_children(p, n, 0, b, k);
            }
            return;
        }
    }

private:
    void match_children(const Pattern& p, const ENode& n, std::size_t i, Bindings& b, const Continuation& k) const
    {
        if (i == n.children.size()) {
            k(b);
            return;
        }
        match(p.args()[i], n.children[i], b, [&](Bindings& inner) { match_children(p, n, i + 1, inner, k); });
    }

    const EGraph& g_;
};

} // namespace

std::vector<EMatchSubst> ematch(const EGraph& g, const Pattern& p, EClassId root)
{
    if (!g.is_clean())
        throw DirtyGraph();
    root = g.find(root);
    std::vector<EMatchSubst> out;
    Bindings b;
    Matcher(g).match(p, root, b, [&](Bindings& found) { out.push_back(EMatchSubst{root, found}); });
    return out;
}

std::vector<EMatchSubst> ematch_all(const EGraph& g, const Pattern& p)
{
    if (!g.is_clean())
        throw DirtyGraph();
    std::vector<EMatchSubst> out;
    for (EClassId id : g.class_ids()) {
        auto found = ematch(g, p, id);
        out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    return out;
}

} // namespace eqsat
