#include "eqsat/egraph.hpp"

#include "eqsat/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace eqsat {

namespace {

constexpr std::string_view kIntTag = "0i:";
constexpr std::string_view kBoolTag = "0b:";
constexpr std::string_view kFloatTag = "0f:";

} // namespace

ENode ENode::leaf(const Atom& atom)
{
    switch (atom.kind()) {
    case Atom::Kind::Symbol:
        return ENode{atom.symbol_name(), {}};
    case Atom::Kind::Int:
        return ENode{std::string(kIntTag) + atom.to_string(), {}};
    case Atom::Kind::Bool:
        return ENode{std::string(kBoolTag) + atom.to_string(), {}};
    case Atom::Kind::Float:
        return ENode{std::string(kFloatTag) + atom.to_string(), {}};
    }
    return {};
}

std::optional<Atom> ENode::atom() const
{
    if (!is_leaf())
        return std::nullopt;
    std::string_view op_view = op;
    // all tags have the same length
    auto payload = op_view.starts_with('0') ? op_view.substr(kIntTag.size()) : std::string_view{};
    if (op_view.starts_with(kIntTag)) {
        std::int64_t v = 0;
        std::from_chars(payload.data(), payload.data() + payload.size(), v);
        return Atom::integer(v);
    }
    if (op_view.starts_with(kBoolTag))
        return Atom::boolean(payload == "true");
    if (op_view.starts_with(kFloatTag)) {
        double v = 0;
        std::from_chars(payload.data(), payload.data() + payload.size(), v);
        return Atom::floating(v);
    }
    return Atom::symbol(op);
}

std::string ENode::label() const
{
    if (auto a = atom())
        return a->to_string();
    return op;
}

std::size_t ENodeHash::operator()(const ENode& n) const noexcept
{
    std::size_t h = std::hash<std::string>{}(n.op);
    for (EClassId c : n.children)
        h ^= c.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

EGraph::EGraph(std::shared_ptr<const AnalysisDomain> analysis, std::size_t max_nodes)
    : analysis_(analysis ? std::move(analysis) : no_analysis()), max_nodes_(max_nodes)
{
}

EGraph::EGraph(const EGraph& other)
    : analysis_(other.analysis_),
      max_nodes_(other.max_nodes_),
      parent_(other.parent_),
      size_(other.size_),
      memo_(other.memo_),
      worklist_(other.worklist_),
      node_count_(other.node_count_),
      class_count_(other.class_count_),
      next_index_(other.next_index_),
      version_(other.version_)
{
    classes_.reserve(other.classes_.size());
    for (const auto& c : other.classes_)
        classes_.push_back(c ? std::make_unique<EClass>(*c) : nullptr);
}

EGraph& EGraph::operator=(const EGraph& other)
{
    if (this != &other) {
        EGraph copy(other);
        *this = std::move(copy);
    }
    return *this;
}

EClassId EGraph::checked(EClassId id) const
{
    if (!contains(id))
        throw InvalidId(id.value);
    return id;
}

EClassId EGraph::find(EClassId id) const
{
    checked(id);
    while (parent_[id.value] != id)
        id = parent_[id.value];
    return id;
}

EClassId EGraph::find_compress(EClassId id)
{
    EClassId root = find(id);
    while (parent_[id.value] != root) {
        EClassId next = parent_[id.value];
        parent_[id.value] = root;
        id = next;
    }
    return root;
}

ENode EGraph::canonicalize(const ENode& node) const
{
    ENode out{node.op, {}};
    out.children.reserve(node.children.size());
    for (EClassId c : node.children)
        out.children.push_back(find(c));
    return out;
}

std::optional<EClassId> EGraph::lookup(const ENode& node) const
{
    auto it = memo_.find(canonicalize(node));
    if (it == memo_.end())
        return std::nullopt;
    return find(it->second);
}

std::optional<EClassId> EGraph::lookup_term(const Term& t) const
{
    if (t.is_leaf())
        return lookup(ENode::leaf(t.atom()));
    ENode node{t.op(), {}};
    for (const Term& a : t.args()) {
        auto c = lookup_term(a);
        if (!c)
            return std::nullopt;
        node.children.push_back(*c);
    }
    return lookup(node);
}

const EClass& EGraph::eclass(EClassId id) const
{
    return *classes_[find(id).value];
}

EClass& EGraph::eclass_mut(EClassId id)
{
    return *classes_[find(id).value];
}

const ConstFoldValue& EGraph::data(EClassId id) const
{
    return eclass(id).data;
}

std::vector<EClassId> EGraph::class_ids() const
{
    std::vector<EClassId> ids;
    ids.reserve(class_count_);
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i])
            ids.push_back(EClassId{static_cast<std::uint32_t>(i)});
    return ids;
}

EClassId EGraph::add_term(const Term& t)
{
    bool was_clean = is_clean();
    std::function<EClassId(const Term&)> add = [&](const Term& sub) {
        if (sub.is_leaf())
            return add_node(ENode::leaf(sub.atom()));
        ENode node{sub.op(), {}};
        node.children.reserve(sub.arity());
        for (const Term& a : sub.args())
            node.children.push_back(add(a));
        return add_node(std::move(node));
    };
    EClassId id = add(t);
    if (was_clean && !is_clean())
        rebuild();
    return find(id);
}

EClassId EGraph::add_node(ENode node)
{
    node = canonicalize(node);
    if (auto it = memo_.find(node); it != memo_.end())
        return find(it->second);
    if (node_count_ >= max_nodes_)
        throw CapacityError(max_nodes_);

    EClassId id{static_cast<std::uint32_t>(parent_.size())};
    parent_.push_back(id);
    size_.push_back(1);

    auto cls = std::make_unique<EClass>();
    cls->id = id;
    cls->nodes.push_back(ClassNode{node, next_index_++});
    classes_.push_back(std::move(cls));

    std::vector<EClassId> seen;
    for (EClassId child : node.children) {
        if (std::find(seen.begin(), seen.end(), child) != seen.end())
            continue;
        seen.push_back(child);
        classes_[child.value]->parents.emplace_back(node, id);
    }
    memo_.emplace(node, id);
    ++node_count_;
    ++class_count_;
    ++version_;

    classes_[id.value]->data = analysis_->make(*this, node);
    analysis_->modify(*this, id);
    return find(id);
}

EClassId EGraph::add_self_loop(const std::string& op)
{
    if (!Atom::valid_symbol_name(op))
        throw std::invalid_argument("invalid operator name `" + op + "`");
    if (node_count_ >= max_nodes_)
        throw CapacityError(max_nodes_);

    EClassId id{static_cast<std::uint32_t>(parent_.size())};
    ENode node{op, {id}};
    parent_.push_back(id);
    size_.push_back(1);
    auto cls = std::make_unique<EClass>();
    cls->id = id;
    cls->nodes.push_back(ClassNode{node, next_index_++});
    cls->parents.emplace_back(node, id);
    classes_.push_back(std::move(cls));
    memo_.emplace(node, id);
    ++node_count_;
    ++class_count_;
    ++version_;

    classes_[id.value]->data = analysis_->make(*this, node);
    analysis_->modify(*this, id);
    return find(id);
}

std::optional<ConstFoldValue> EGraph::join(EClassId a, EClassId b) const
{
    return analysis_->join(data(a), data(b));
}

EClassId EGraph::merge(EClassId a, EClassId b)
{
    a = find_compress(checked(a));
    b = find_compress(checked(b));
    if (a == b)
        return a;

    if (size_[a.value] < size_[b.value] || (size_[a.value] == size_[b.value] && b < a))
        std::swap(a, b);

    auto joined = join(a, b);
    if (!joined) {
        throw AnalysisInconsistency("analysis inconsistency: merging e-class " + std::to_string(a.value) + " (" +
                                        data(a).to_string() + ") with e-class " + std::to_string(b.value) + " (" +
                                        data(b).to_string() + ")",
                                    a.value);
    }

    parent_[b.value] = a;
    size_[a.value] += size_[b.value];

    std::unique_ptr<EClass> absorbed = std::move(classes_[b.value]);
    EClass& root = *classes_[a.value];
    root.nodes.insert(root.nodes.end(), std::make_move_iterator(absorbed->nodes.begin()),
                      std::make_move_iterator(absorbed->nodes.end()));
    root.parents.insert(root.parents.end(), std::make_move_iterator(absorbed->parents.begin()),
                        std::make_move_iterator(absorbed->parents.end()));
    root.data = std::move(*joined);

    --class_count_;
    ++version_;
    worklist_.push_back(a);
    return a;
}

void EGraph::set_data(EClassId id, const ConstFoldValue& value)
{
    eclass_mut(id).data = value;
}

void EGraph::repair(EClassId id)
{
    auto parents = std::move(eclass_mut(id).parents);
    eclass_mut(id).parents.clear();

    for (const auto& [node, cls] : parents)
        memo_.erase(node);

    std::unordered_map<ENode, EClassId, ENodeHash> seen;
    std::vector<std::pair<ENode, EClassId>> repaired;
    repaired.reserve(parents.size());
    for (auto& [node, cls] : parents) {
        ENode canon = canonicalize(node);
        EClassId owner = find_compress(cls);
        auto [it, inserted] = seen.emplace(canon, owner);
        if (!inserted) {
            // congruent to an earlier parent
            owner = merge(it->second, owner);
            it->second = owner;
            continue;
        }
        repaired.emplace_back(std::move(canon), owner);
    }
    for (auto& [node, owner] : repaired)
        memo_[node] = find(owner);

    auto& root_parents = eclass_mut(id).parents;
    root_parents.insert(root_parents.end(), repaired.begin(), repaired.end());

    // propagate analysis upward
    for (const auto& [node, owner] : repaired) {
        EClassId target = find(owner);
        ConstFoldValue made = analysis_->make(*this, canonicalize(node));
        auto joined = analysis_->join(data(target), made);
        if (!joined) {
            throw AnalysisInconsistency("analysis inconsistency in e-class " + std::to_string(target.value) + ": " +
                                            data(target).to_string() + " vs " + made.to_string(),
                                        target.value);
        }
        if (*joined != data(target)) {
            set_data(target, *joined);
            worklist_.push_back(target);
        }
    }

    analysis_->modify(*this, find(id));
}

void EGraph::normalize_classes()
{
    for (auto& cls : classes_) {
        if (!cls)
            continue;
        for (ClassNode& cn : cls->nodes)
            cn.node = canonicalize(cn.node);
        std::sort(cls->nodes.begin(), cls->nodes.end(), [](const ClassNode& x, const ClassNode& y) {
            return x.index < y.index;
        });
        std::unordered_set<ENode, ENodeHash> unique;
        std::size_t before = cls->nodes.size();
        std::erase_if(cls->nodes, [&](const ClassNode& cn) { return !unique.insert(cn.node).second; });
        node_count_ -= before - cls->nodes.size();
    }
    // Parent lists remember nodes in the shape they had when registered, so
    // repair can miss an intermediate key. Rebuilding the memo from the
    // classes themselves keeps every key canonical.
    memo_.clear();
    memo_.reserve(node_count_);
    for (const auto& cls : classes_) {
        if (!cls)
            continue;
        for (const ClassNode& cn : cls->nodes)
            memo_.emplace(cn.node, cls->id);
    }
}

void EGraph::rebuild()
{
    if (worklist_.empty())
        return;
    while (!worklist_.empty()) {
        auto todo = std::exchange(worklist_, {});
        for (EClassId& id : todo)
            id = find_compress(id);
        std::sort(todo.begin(), todo.end());
        todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
        for (EClassId id : todo)
            repair(find(id));
    }
    normalize_classes();
}

void EGraph::modify_all()
{
    for (EClassId id : class_ids())
        if (classes_[id.value])
            analysis_->modify(*this, id);
    rebuild();
}

} // namespace eqsat
