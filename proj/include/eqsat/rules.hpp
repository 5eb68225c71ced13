#pragma once

#include "eqsat/ematch.hpp"
#include "eqsat/fold.hpp"
#include "eqsat/pattern.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqsat {

/// Computed right-hand side: `fold(<op>, ?a[, ?b])`.
struct DynamicRhs {
    FoldOp op;
    std::vector<std::string> args;
    bool operator==(const DynamicRhs&) const = default;
};

enum class RuleKind { Directed, Bidirectional, Dynamic };

struct Rule {
    std::string name;
    RuleKind kind = RuleKind::Directed;
    Pattern lhs;
    std::variant<Pattern, DynamicRhs> rhs;
    std::vector<Guard> guards;

    bool is_dynamic() const noexcept { return std::holds_alternative<DynamicRhs>(rhs); }
    const Pattern& rhs_pattern() const { return std::get<Pattern>(rhs); }
    const DynamicRhs& rhs_dynamic() const { return std::get<DynamicRhs>(rhs); }

    bool operator==(const Rule&) const = default;
};

/// Builds a rule and checks variable scoping, guard arity and fold arity.
/// Throws TheoryError (line 0).
Rule make_rule(std::string name, RuleKind kind, Pattern lhs, std::variant<Pattern, DynamicRhs> rhs,
               std::vector<Guard> guards = {});

struct Theory {
    std::string name;
    std::vector<Rule> rules;

    bool operator==(const Theory&) const = default;
};

/// Suffix naming the right-to-left half of a bidirectional rule.
inline constexpr std::string_view kReverseSuffix = ":rev";

/// Directed view used by both backends: a bidirectional rule `n: l == r`
/// becomes `n: l => r` followed by `n:rev: r => l`, both keeping the guards.
std::vector<Rule> expand_rules(const Theory& th);

/// Line-oriented theory format:
///
///     theory <name>
///     rule <name>: <lhs> => <rhs-or-fold> [if <guard> {&& <guard>}]
///     rule <name>: <lhs> == <rhs> [if <guard> {&& <guard>}]
///
/// Throws SyntaxError or TheoryError carrying the 1-based line number.
Theory parse_theory(std::string_view input);
Theory load_theory(const std::string& path);
std::string print_theory(const Theory& th);
std::string print_rule(const Rule& r);

/// Evaluates a fold over literal bindings. Nullopt means "do not rewrite".
/// Throws UnboundVariable for a missing argument.
std::optional<Term> eval_dynamic(const DynamicRhs& d, const std::map<std::string, Atom>& bindings);

/// Guards against e-class knowledge: constant-fold analysis values for the
/// literal predicates, symbol leaves for is_sym, class identity for eq.
/// Unknown analysis makes every literal predicate false.
bool check_guard_eclass(const Guard& g, const EMatchSubst& subst, const EGraph& graph);

} // namespace eqsat
