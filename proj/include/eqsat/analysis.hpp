#pragma once

#include "eqsat/term.hpp"

#include <memory>
#include <optional>
#include <string>

namespace eqsat {

class EGraph;
struct ENode;
struct EClassId;

/// Constant-propagation lattice: Unknown below every Known(c). Two distinct
/// constants have no join.
class ConstFoldValue {
public:
    ConstFoldValue() = default;
    static ConstFoldValue unknown() { return {}; }
    /// Only integer and boolean atoms may be known.
    static ConstFoldValue known(Atom atom);

    bool is_known() const noexcept { return value_.has_value(); }
    const Atom& value() const { return *value_; }
    const std::optional<Atom>& get() const noexcept { return value_; }

    bool operator==(const ConstFoldValue&) const = default;
    std::string to_string() const;

private:
    std::optional<Atom> value_;
};

/// Throws AnalysisInconsistency (class id 0) on Known(v) and Known(w), v != w.
ConstFoldValue analysis_join(const ConstFoldValue& a, const ConstFoldValue& b);

/// A semilattice domain attached to every e-class.
///
/// `make` computes the value of a freshly created canonical e-node, `join`
/// combines values when classes merge (nullopt signals a contradiction), and
/// `modify` may add facts back into the graph once a class value settles.
/// `modify` must be idempotent.
class AnalysisDomain {
public:
    virtual ~AnalysisDomain() = default;
    virtual ConstFoldValue make(const EGraph& graph, const ENode& node) const = 0;
    virtual std::optional<ConstFoldValue> join(const ConstFoldValue& a, const ConstFoldValue& b) const = 0;
    virtual void modify(EGraph& graph, EClassId id) const = 0;
};

/// Integer/boolean constant folding: literal leaves are known, operator
/// nodes over known children fold with `eval_fold`, and `modify` adds the
/// literal leaf of a known class to that class.
class ConstFoldAnalysis final : public AnalysisDomain {
public:
    ConstFoldValue make(const EGraph& graph, const ENode& node) const override;
    std::optional<ConstFoldValue> join(const ConstFoldValue& a, const ConstFoldValue& b) const override;
    void modify(EGraph& graph, EClassId id) const override;
};

/// Everything stays Unknown.
class NoAnalysis final : public AnalysisDomain {
public:
    ConstFoldValue make(const EGraph& graph, const ENode& node) const override;
    std::optional<ConstFoldValue> join(const ConstFoldValue& a, const ConstFoldValue& b) const override;
    void modify(EGraph& graph, EClassId id) const override;
};

std::shared_ptr<const AnalysisDomain> const_fold_analysis();
std::shared_ptr<const AnalysisDomain> no_analysis();

ConstFoldValue analysis_make(const EGraph& graph, const ENode& node);
void analysis_modify(EGraph& graph, EClassId id);

} // namespace eqsat
