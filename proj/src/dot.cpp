#include "eqsat/egraph.hpp"
#include "eqsat/error.hpp"

#include <string>

namespace eqsat {

namespace {

std::string record_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '{':
        case '}':
        case '|':
        case '<':
        case '>':
        case '"':
        case '\\':
        case ' ':
            out += '\\';
            [[fallthrough]];
        default:
            out += c;
        }
    }
    return out;
}

std::string node_name(EClassId cls, std::size_t pos)
{
    return "n" + std::to_string(cls.value) + "_" + std::to_string(pos);
}

} // namespace

std::string dump_dot(const EGraph& g)
{
    if (!g.is_clean())
        throw DirtyGraph();

    std::string out = "digraph egraph {\n  compound=true\n  clusterrank=local\n  node [shape=record]\n";
    std::string edges;
    for (EClassId id : g.class_ids()) {
        const EClass& cls = g.eclass(id);
        out += "  subgraph cluster_" + std::to_string(id.value) + " {\n";
        out += "    label=\"" + std::to_string(id.value) + "\"\n    style=dotted\n";
        for (std::size_t i = 0; i < cls.nodes.size(); ++i) {
            const ENode& n = cls.nodes[i].node;
            std::string label = record_escape(n.label());
            if (!n.is_leaf()) {
                label = "{" + label + "|{";
                for (std::size_t c = 0; c < n.children.size(); ++c) {
                    if (c)
                        label += "|";
                    label += "<c" + std::to_string(c) + ">" + std::to_string(c);
                }
                label += "}}";
            }
            out += "    " + node_name(id, i) + " [label=\"" + label + "\"]\n";
            for (std::size_t c = 0; c < n.children.size(); ++c) {
                EClassId child = g.find(n.children[c]);
                edges += "  " + node_name(id, i) + ":c" + std::to_string(c) + " -> " + node_name(child, 0) +
                         " [lhead=cluster_" + std::to_string(child.value) + "]\n";
            }
        }
        out += "  }\n";
    }
    out += edges;
    out += "}\n";
    return out;
}

} // namespace eqsat
