#pragma once

#include "eqsat/analysis.hpp"
#include "eqsat/term.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eqsat {

struct EClassId {
    std::uint32_t value = 0;
    auto operator<=>(const EClassId&) const = default;
};

/// Operator over child e-classes. Leaves carry their atom in `op`: symbols
/// verbatim, literals with a kind tag starting with a digit (`0i:5`,
/// `0b:true`, `0f:2.5`), which no symbol can begin with.
struct ENode {
    std::string op;
    std::vector<EClassId> children;

    static ENode leaf(const Atom& atom);
    bool is_leaf() const noexcept { return children.empty(); }
    /// The atom of a leaf node, nullopt for operator nodes.
    std::optional<Atom> atom() const;
    /// Printable operator or atom text.
    std::string label() const;

    bool operator==(const ENode&) const = default;
};

struct ENodeHash {
    std::size_t operator()(const ENode& n) const noexcept;
};

/// An e-node as stored in its class, with its global insertion index.
struct ClassNode {
    ENode node;
    std::size_t index;
};

struct EClass {
    EClassId id;
    std::vector<ClassNode> nodes;
    /// Occurrences of this class as a child. May contain stale entries
    /// between rebuilds.
    std::vector<std::pair<ENode, EClassId>> parents;
    ConstFoldValue data;
};

/// Union-find plus hashcons over e-nodes with deferred congruence repair.
///
/// Merges only record the union and queue the new root; `rebuild` restores
/// the hashcons and congruence invariants. A graph with an empty worklist is
/// CLEAN and is the only state in which matching, extraction and DOT export
/// are allowed.
class EGraph {
public:
    static constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

    explicit EGraph(std::shared_ptr<const AnalysisDomain> analysis = const_fold_analysis(),
                    std::size_t max_nodes = kUnlimited);

    EGraph(const EGraph& other);
    EGraph& operator=(const EGraph& other);
    EGraph(EGraph&&) noexcept = default;
    EGraph& operator=(EGraph&&) noexcept = default;

    /// Adds every subterm bottom-up. Leaves the graph CLEAN if it was.
    EClassId add_term(const Term& t);
    /// Adds one node (children are canonicalized first).
    EClassId add_node(ENode node);
    /// Adds a fresh class whose only node is `op` applied to that class
    /// itself. It represents no finite term; useful for exercising cyclic
    /// structure in extraction and matching.
    EClassId add_self_loop(const std::string& op);
    EClassId merge(EClassId a, EClassId b);
    void rebuild();

    EClassId find(EClassId id) const;
    ENode canonicalize(const ENode& node) const;
    std::optional<EClassId> lookup(const ENode& node) const;
    /// Class of `t` if every subterm is already present.
    std::optional<EClassId> lookup_term(const Term& t) const;

    bool is_clean() const noexcept { return worklist_.empty(); }
    bool contains(EClassId id) const noexcept { return id.value < parent_.size(); }

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t class_count() const noexcept { return class_count_; }
    /// Number of ids ever allocated.
    std::size_t id_bound() const noexcept { return parent_.size(); }
    /// Bumped by every new node and every effective union.
    std::uint64_t version() const noexcept { return version_; }

    /// Canonical class ids in ascending order.
    std::vector<EClassId> class_ids() const;
    const EClass& eclass(EClassId id) const;
    const ConstFoldValue& data(EClassId id) const;

    const std::unordered_map<ENode, EClassId, ENodeHash>& hashcons() const noexcept { return memo_; }
    const AnalysisDomain& analysis() const noexcept { return *analysis_; }

    std::size_t max_nodes() const noexcept { return max_nodes_; }
    void set_max_nodes(std::size_t n) noexcept { max_nodes_ = n; }

    /// Runs the analysis modify hook over every class, then rebuilds.
    void modify_all();

private:
    EClassId find_compress(EClassId id);
    EClassId checked(EClassId id) const;
    EClass& eclass_mut(EClassId id);
    void repair(EClassId id);
    void normalize_classes();
    void set_data(EClassId id, const ConstFoldValue& value);
    std::optional<ConstFoldValue> join(EClassId a, EClassId b) const;

    std::shared_ptr<const AnalysisDomain> analysis_;
    std::size_t max_nodes_;
    std::vector<EClassId> parent_;
    std::vector<std::uint32_t> size_;
    std::vector<std::unique_ptr<EClass>> classes_;
    std::unordered_map<ENode, EClassId, ENodeHash> memo_;
    std::vector<EClassId> worklist_;
    std::size_t node_count_ = 0;
    std::size_t class_count_ = 0;
    std::size_t next_index_ = 0;
    std::uint64_t version_ = 0;
};

/// Graphviz rendering, one cluster per class. Throws DirtyGraph.
std::string dump_dot(const EGraph& g);

} // namespace eqsat

template <>
struct std::hash<eqsat::EClassId> {
    std::size_t operator()(eqsat::EClassId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
