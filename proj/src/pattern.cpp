#include "eqsat/pattern.hpp"

#include "eqsat/error.hpp"
#include "reader.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace eqsat {

Pattern Pattern::var(std::string name)
{
    if (!detail::valid_var_name(name))
        throw std::invalid_argument("invalid pattern variable name `" + name + "`");
    Pattern p;
    p.kind_ = Kind::Var;
    p.text_ = std::move(name);
    return p;
}

Pattern Pattern::lit(Atom atom)
{
    Pattern p;
    p.kind_ = Kind::Lit;
    p.atom_ = std::move(atom);
    return p;
}

Pattern Pattern::apply(std::string op, std::vector<Pattern> args)
{
    if (args.empty())
        throw std::invalid_argument("application of `" + op + "` needs at least one argument");
    if (!Atom::valid_symbol_name(op))
        throw std::invalid_argument("invalid operator name `" + op + "`");
    Pattern p;
    p.kind_ = Kind::Apply;
    p.text_ = std::move(op);
    p.args_ = std::move(args);
    return p;
}

namespace {

void collect_vars(const Pattern& p, std::set<std::string>& out)
{
    if (p.is_var())
        out.insert(p.var_name());
    for (const Pattern& a : p.args())
        collect_vars(a, out);
}

} // namespace

std::set<std::string> Pattern::vars() const
{
    std::set<std::string> out;
    collect_vars(*this, out);
    return out;
}

std::size_t Pattern::depth() const
{
    std::size_t d = 0;
    for (const Pattern& a : args_)
        d = std::max(d, a.depth());
    return d + 1;
}

bool Pattern::operator==(const Pattern& other) const
{
    if (kind_ != other.kind_)
        return false;
    switch (kind_) {
    case Kind::Var:
        return text_ == other.text_;
    case Kind::Lit:
        return *atom_ == *other.atom_;
    case Kind::Apply:
        return text_ == other.text_ && args_ == other.args_;
    }
    return false;
}

Pattern parse_pattern(std::string_view input)
{
    detail::SexprReader reader(input, /*allow_vars=*/true);
    Pattern p = reader.read();
    reader.skip_space();
    if (!reader.at_end())
        reader.fail("trailing input after pattern", reader.pos());
    return p;
}

namespace {

void print_into(const Pattern& p, std::string& out)
{
    switch (p.kind()) {
    case Pattern::Kind::Var:
        out += '?';
        out += p.var_name();
        return;
    case Pattern::Kind::Lit:
        out += p.atom().to_string();
        return;
    case Pattern::Kind::Apply:
        out += '(';
        out += p.op();
        for (const Pattern& a : p.args()) {
            out += ' ';
            print_into(a, out);
        }
        out += ')';
        return;
    }
}

} // namespace

std::string print_pattern(const Pattern& p)
{
    std::string out;
    print_into(p, out);
    return out;
}

Term pattern_to_term(const Pattern& p)
{
    switch (p.kind()) {
    case Pattern::Kind::Var:
        throw UnboundVariable(p.var_name());
    case Pattern::Kind::Lit:
        return Term::leaf(p.atom());
    case Pattern::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(p.args().size());
        for (const Pattern& a : p.args())
            args.push_back(pattern_to_term(a));
        return Term::apply(p.op(), std::move(args));
    }
    }
    throw std::logic_error("unreachable");
}

Pattern term_to_pattern(const Term& t)
{
    if (t.is_leaf())
        return Pattern::lit(t.atom());
    std::vector<Pattern> args;
    args.reserve(t.arity());
    for (const Term& a : t.args())
        args.push_back(term_to_pattern(a));
    return Pattern::apply(t.op(), std::move(args));
}

namespace {

struct GuardInfo {
    GuardKind kind;
    std::string_view name;
    std::size_t arity;
};

constexpr std::array<GuardInfo, 7> kGuards{{
    {GuardKind::IsInt, "is_int", 1},
    {GuardKind::IsBool, "is_bool", 1},
    {GuardKind::IsSym, "is_sym", 1},
    {GuardKind::IsLit, "is_lit", 1},
    {GuardKind::Nonzero, "nonzero", 1},
    {GuardKind::IsZero, "is_zero", 1},
    {GuardKind::Eq, "eq", 2},
}};

const GuardInfo& info(GuardKind kind)
{
    return kGuards[static_cast<std::size_t>(kind)];
}

} // namespace

std::string_view guard_name(GuardKind kind)
{
    return info(kind).name;
}

std::size_t guard_arity(GuardKind kind)
{
    return info(kind).arity;
}

std::optional<GuardKind> guard_from_name(std::string_view name)
{
    for (const GuardInfo& g : kGuards)
        if (g.name == name)
            return g.kind;
    return std::nullopt;
}

std::string print_guard(const Guard& g)
{
    std::string out(guard_name(g.kind));
    out += '(';
    for (std::size_t i = 0; i < g.args.size(); ++i) {
        if (i)
            out += ", ";
        out += '?';
        out += g.args[i];
    }
    out += ')';
    return out;
}

namespace {

bool match_into(const Pattern& p, const Term& t, TermSubst& subst)
{
    switch (p.kind()) {
    case Pattern::Kind::Var: {
        auto [it, inserted] = subst.try_emplace(p.var_name(), t);
        return inserted || it->second == t;
    }
    case Pattern::Kind::Lit:
        return t.is_leaf() && t.atom() == p.atom();
    case Pattern::Kind::Apply: {
        if (t.is_leaf() || t.op() != p.op() || t.arity() != p.args().size())
            return false;
        for (std::size_t i = 0; i < t.arity(); ++i)
            if (!match_into(p.args()[i], t.args()[i], subst))
                return false;
        return true;
    }
    }
    return false;
}

const Term& bound(const TermSubst& subst, const std::string& var)
{
    auto it = subst.find(var);
    if (it == subst.end())
        throw UnboundVariable(var);
    return it->second;
}

} // namespace

std::optional<TermSubst> match_term(const Pattern& p, const Term& t)
{
    TermSubst subst;
    if (!match_into(p, t, subst))
        return std::nullopt;
    return subst;
}

Term instantiate(const Pattern& p, const TermSubst& subst)
{
    switch (p.kind()) {
    case Pattern::Kind::Var:
        return bound(subst, p.var_name());
    case Pattern::Kind::Lit:
        return Term::leaf(p.atom());
    case Pattern::Kind::Apply: {
        std::vector<Term> args;
        args.reserve(p.args().size());
        for (const Pattern& a : p.args())
            args.push_back(instantiate(a, subst));
        return Term::apply(p.op(), std::move(args));
    }
    }
    throw std::logic_error("unreachable");
}

bool check_guard_term(const Guard& g, const TermSubst& subst)
{
    const Term& t = bound(subst, g.args.at(0));
    auto leaf_kind = [&]() -> std::optional<Atom::Kind> {
        if (!t.is_leaf())
            return std::nullopt;
        return t.atom().kind();
    };
    auto numeric_zero = [&]() -> std::optional<bool> {
        auto k = leaf_kind();
        if (k == Atom::Kind::Int)
            return t.atom().int_value() == 0;
        if (k == Atom::Kind::Float)
            return t.atom().float_value() == 0.0;
        return std::nullopt;
    };

    switch (g.kind) {
    case GuardKind::IsInt:
        return leaf_kind() == Atom::Kind::Int;
    case GuardKind::IsBool:
        return leaf_kind() == Atom::Kind::Bool;
    case GuardKind::IsSym:
        return leaf_kind() == Atom::Kind::Symbol;
    case GuardKind::IsLit:
        return t.is_leaf() && t.atom().is_literal();
    case GuardKind::Nonzero:
        return numeric_zero() == false;
    case GuardKind::IsZero:
        return numeric_zero() == true;
    case GuardKind::Eq:
        return t == bound(subst, g.args.at(1));
    }
    return false;
}

} // namespace eqsat
