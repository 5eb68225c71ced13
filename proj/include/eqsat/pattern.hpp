#pragma once

#include "eqsat/term.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace eqsat {

/// Left- or right-hand side template. Variables are written `?name` and may
/// stand anywhere an atom may, but never in operator position.
class Pattern {
public:
    enum class Kind { Var, Lit, Apply };

    static Pattern var(std::string name);
    static Pattern lit(Atom atom);
    static Pattern apply(std::string op, std::vector<Pattern> args);

    Kind kind() const noexcept { return kind_; }
    bool is_var() const noexcept { return kind_ == Kind::Var; }
    const std::string& var_name() const { return text_; }
    const std::string& op() const { return text_; }
    const Atom& atom() const { return *atom_; }
    const std::vector<Pattern>& args() const noexcept { return args_; }

    /// Distinct variable names, sorted.
    std::set<std::string> vars() const;
    std::size_t depth() const;

    bool operator==(const Pattern& other) const;

private:
    Pattern() = default;
    Kind kind_ = Kind::Var;
    std::string text_;
    std::optional<Atom> atom_;
    std::vector<Pattern> args_;
};

Pattern parse_pattern(std::string_view input);
std::string print_pattern(const Pattern& p);

/// Converts a variable-free pattern; throws UnboundVariable otherwise.
Term pattern_to_term(const Pattern& p);
Pattern term_to_pattern(const Term& t);

enum class GuardKind { IsInt, IsBool, IsSym, IsLit, Nonzero, IsZero, Eq };

struct Guard {
    GuardKind kind;
    std::vector<std::string> args;
    bool operator==(const Guard&) const = default;
};

std::string_view guard_name(GuardKind kind);
std::optional<GuardKind> guard_from_name(std::string_view name);
std::size_t guard_arity(GuardKind kind);
std::string print_guard(const Guard& g);

using TermSubst = std::map<std::string, Term>;

/// Syntactic matching; repeated variables must bind structurally equal subterms.
std::optional<TermSubst> match_term(const Pattern& p, const Term& t);

/// Throws UnboundVariable for a variable missing from `subst`.
Term instantiate(const Pattern& p, const TermSubst& subst);

/// Guards against concrete bindings. Non-literal bindings are never known
/// to be zero or nonzero.
bool check_guard_term(const Guard& g, const TermSubst& subst);

} // namespace eqsat
