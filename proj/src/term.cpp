#include "eqsat/term.hpp"

#include "eqsat/error.hpp"
#include "eqsat/pattern.hpp"
#include "reader.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace eqsat {

bool Atom::valid_symbol_name(std::string_view name) noexcept
{
    if (name.empty() || name.front() == '?' || std::isdigit(static_cast<unsigned char>(name.front())))
        return false;
    if (name == "true" || name == "false")
        return false;
    if (name.size() > 1 && name.front() == '-' && std::isdigit(static_cast<unsigned char>(name[1])))
        return false;
    return std::none_of(name.begin(), name.end(), [](char c) { return detail::is_delimiter(c); });
}

Atom Atom::symbol(std::string name)
{
    if (!valid_symbol_name(name))
        throw std::invalid_argument("invalid symbol name `" + name + "`");
    return Atom(Rep{Symbol{std::move(name)}});
}

bool Atom::operator==(const Atom& other) const noexcept
{
    if (rep_.index() != other.rep_.index())
        return false;
    switch (kind()) {
    case Kind::Symbol:
        return symbol_name() == other.symbol_name();
    case Kind::Int:
        return int_value() == other.int_value();
    case Kind::Bool:
        return bool_value() == other.bool_value();
    case Kind::Float:
        return std::bit_cast<std::uint64_t>(float_value()) == std::bit_cast<std::uint64_t>(other.float_value());
    }
    return false;
}

std::string Atom::to_string() const
{
    switch (kind()) {
    case Kind::Symbol:
        return symbol_name();
    case Kind::Int:
        return std::to_string(int_value());
    case Kind::Bool:
        return bool_value() ? "true" : "false";
    case Kind::Float: {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, float_value());
        std::string s(buf, ptr);
        // must stay distinguishable from an integer when read back
        if (s.find_first_of(".eE") == std::string::npos)
            s += ".0";
        return s;
    }
    }
    return {};
}

Term Term::leaf(Atom atom)
{
    if (atom.kind() == Atom::Kind::Float && !std::isfinite(atom.float_value()))
        throw std::invalid_argument("non-finite float literals have no textual form");
    auto node = std::make_shared<Node>();
    node->atom = std::move(atom);
    return Term(std::move(node));
}

Term Term::apply(std::string op, std::vector<Term> args)
{
    if (args.empty())
        throw std::invalid_argument("application of `" + op + "` needs at least one argument");
    if (!Atom::valid_symbol_name(op))
        throw std::invalid_argument("invalid operator name `" + op + "`");
    auto node = std::make_shared<Node>();
    node->op = std::move(op);
    node->args = std::move(args);
    return Term(std::move(node));
}

const Atom& Term::atom() const
{
    if (!is_leaf())
        throw std::logic_error("atom() on an application");
    return node_->atom;
}

const std::string& Term::op() const
{
    if (is_leaf())
        throw std::logic_error("op() on a leaf");
    return node_->op;
}

bool Term::operator==(const Term& other) const noexcept
{
    if (node_ == other.node_)
        return true;
    if (is_leaf() != other.is_leaf())
        return false;
    if (is_leaf())
        return node_->atom == other.node_->atom;
    return node_->op == other.node_->op && std::equal(node_->args.begin(), node_->args.end(),
                                                      other.node_->args.begin(), other.node_->args.end());
}

Term parse_term(std::string_view input)
{
    detail::SexprReader reader(input, /*allow_vars=*/false);
    Pattern p = reader.read();
    reader.skip_space();
    if (!reader.at_end())
        reader.fail("trailing input after expression", reader.pos());
    return pattern_to_term(p);
}

namespace {

void print_into(const Term& t, std::string& out)
{
    if (t.is_leaf()) {
        out += t.atom().to_string();
        return;
    }
    out += '(';
    out += t.op();
    for (const Term& a : t.args()) {
        out += ' ';
        print_into(a, out);
    }
    out += ')';
}

} // namespace

std::string print_term(const Term& t)
{
    std::string out;
    print_into(t, out);
    return out;
}

std::size_t term_size(const Term& t)
{
    std::size_t n = 1;
    for (const Term& a : t.args())
        n += term_size(a);
    return n;
}

std::size_t term_depth(const Term& t)
{
    std::size_t d = 0;
    for (const Term& a : t.args())
        d = std::max(d, term_depth(a));
    return d + 1;
}

} // namespace eqsat
