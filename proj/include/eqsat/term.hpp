#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace eqsat {

struct Symbol {
    std::string name;
    bool operator==(const Symbol&) const = default;
};

/// A leaf payload. Floats compare bitwise, so `0.0 != -0.0` and NaN equals itself.
class Atom {
public:
    enum class Kind { Symbol, Int, Bool, Float };

    /// Throws std::invalid_argument for names that could not be read back.
    static Atom symbol(std::string name);
    static Atom integer(std::int64_t v) { return Atom(Rep{v}); }
    static Atom boolean(bool v) { return Atom(Rep{v}); }
    static Atom floating(double v) { return Atom(Rep{v}); }

    Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
    bool is_symbol() const noexcept { return kind() == Kind::Symbol; }
    bool is_literal() const noexcept { return !is_symbol(); }

    const std::string& symbol_name() const { return std::get<Symbol>(rep_).name; }
    std::int64_t int_value() const { return std::get<std::int64_t>(rep_); }
    bool bool_value() const { return std::get<bool>(rep_); }
    double float_value() const { return std::get<double>(rep_); }

    bool operator==(const Atom& other) const noexcept;

    /// Canonical text, e.g. `a`, `-3`, `true`, `2.5`.
    std::string to_string() const;

    static bool valid_symbol_name(std::string_view name) noexcept;

private:
    using Rep = std::variant<Symbol, std::int64_t, bool, double>;
    explicit Atom(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

/// Immutable expression tree. Copies share structure.
class Term {
public:
    static Term leaf(Atom atom);
    static Term sym(std::string name) { return leaf(Atom::symbol(std::move(name))); }
    static Term integer(std::int64_t v) { return leaf(Atom::integer(v)); }
    /// Throws std::invalid_argument for an empty argument list or a bad operator name.
    static Term apply(std::string op, std::vector<Term> args);

    bool is_leaf() const noexcept { return node_->args.empty(); }
    const Atom& atom() const;
    const std::string& op() const;
    std::span<const Term> args() const noexcept { return node_->args; }
    std::size_t arity() const noexcept { return node_->args.size(); }

    bool operator==(const Term& other) const noexcept;

private:
    struct Node {
        Atom atom = Atom::boolean(false);
        std::string op;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses a single s-expression. `#` starts a comment running to end of line.
Term parse_term(std::string_view input);
std::string print_term(const Term& t);

std::size_t term_size(const Term& t);
std::size_t term_depth(const Term& t);

} // namespace eqsat
