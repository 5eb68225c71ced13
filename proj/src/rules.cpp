#include "eqsat/rules.hpp"

#include "eqsat/error.hpp"
#include "reader.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace eqsat {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool has_space(std::string_view s)
{
    return std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string join_vars(const std::set<std::string>& vars)
{
    std::string out;
    for (const auto& v : vars) {
        if (!out.empty())
            out += ", ";
        out += "?" + v;
    }
    return out;
}

std::set<std::string> difference(const std::set<std::string>& a, const std::set<std::string>& b)
{
    std::set<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace

Rule make_rule(std::string name, RuleKind kind, Pattern lhs, std::variant<Pattern, DynamicRhs> rhs,
               std::vector<Guard> guards)
{
    if (name.empty() || has_space(name) || name.find(':') != std::string::npos)
        throw TheoryError("invalid rule name `" + name + "`", 0);

    auto lhs_vars = lhs.vars();
    auto where = "rule `" + name + "`: ";

    if (auto* dyn = std::get_if<DynamicRhs>(&rhs)) {
        if (kind != RuleKind::Dynamic)
            throw TheoryError(where + "a fold right-hand side needs `=>`", 0);
        if (dyn->args.size() != fold_op_arity(dyn->op))
            throw TheoryError(where + "fold `" + std::string(fold_op_name(dyn->op)) + "` takes " +
                                  std::to_string(fold_op_arity(dyn->op)) + " argument(s)",
                              0);
        std::set<std::string> used(dyn->args.begin(), dyn->args.end());
        if (auto missing = difference(used, lhs_vars); !missing.empty())
            throw TheoryError(where + "fold argument(s) " + join_vars(missing) + " not bound by the left-hand side", 0);
    } else {
        if (kind == RuleKind::Dynamic)
            throw TheoryError(where + "dynamic rules need a fold right-hand side", 0);
        auto rhs_vars = std::get<Pattern>(rhs).vars();
        if (auto missing = difference(rhs_vars, lhs_vars); !missing.empty())
            throw TheoryError(where + "variable(s) " + join_vars(missing) + " not bound by the left-hand side", 0);
        if (kind == RuleKind::Bidirectional) {
            if (auto missing = difference(lhs_vars, rhs_vars); !missing.empty())
                throw TheoryError(where + "variable(s) " + join_vars(missing) +
                                      " not bound by the right-hand side of a bidirectional rule",
                                  0);
        }
    }

    for (const Guard& g : guards) {
        if (g.args.size() != guard_arity(g.kind))
            throw TheoryError(where + "guard `" + std::string(guard_name(g.kind)) + "` takes " +
                                  std::to_string(guard_arity(g.kind)) + " argument(s)",
                              0);
        for (const auto& a : g.args)
            if (!lhs_vars.contains(a))
                throw TheoryError(where + "guard variable ?" + a + " not bound by the left-hand side", 0);
    }

    return Rule{std::move(name), kind, std::move(lhs), std::move(rhs), std::move(guards)};
}

std::vector<Rule> expand_rules(const Theory& th)
{
    std::vector<Rule> out;
    out.reserve(th.rules.size());
    for (const Rule& r : th.rules) {
        if (r.kind != RuleKind::Bidirectional) {
            out.push_back(r);
            continue;
        }
        out.push_back(Rule{r.name, RuleKind::Directed, r.lhs, r.rhs, r.guards});
        out.push_back(Rule{r.name + std::string(kReverseSuffix), RuleKind::Directed, r.rhs_pattern(), r.lhs, r.guards});
    }
    return out;
}

namespace {

class LineParser {
public:
    LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    Rule parse_rule()
    {
        auto colon = text_.find(':');
        if (colon == std::string_view::npos)
            fail("expected `rule <name>: ...`", 0);
        std::string name(trim(text_.substr(0, colon)));
        if (name.empty() || has_space(name))
            fail("invalid rule name `" + name + "`", 0);

        detail::SexprReader reader(text_, /*allow_vars=*/true);
        reader.set_pos(colon + 1);
        Pattern lhs = read_pattern(reader);

        reader.skip_space();
        auto rest = reader.rest();
        RuleKind kind;
        if (rest.starts_with("=>"))
            kind = RuleKind::Directed;
        else if (rest.starts_with("=="))
            kind = RuleKind::Bidirectional;
        else
            fail("expected `=>` or `==` after the left-hand side", reader.pos());
        reader.set_pos(reader.pos() + 2);
        reader.skip_space();

        std::variant<Pattern, DynamicRhs> rhs = lhs;
        rest = reader.rest();
        if (rest.starts_with("fold") && trim(rest.substr(4)).starts_with("(")) {
            if (kind != RuleKind::Directed)
                reject("a fold right-hand side needs `=>`", reader.pos());
            kind = RuleKind::Dynamic;
            std::size_t consumed = 0;
            rhs = parse_fold(rest, reader.pos(), consumed);
            reader.set_pos(reader.pos() + consumed);
        } else {
            rhs = read_pattern(reader);
        }

        std::vector<Guard> guards;
        reader.skip_space();
        if (!reader.at_end()) {
            rest = reader.rest();
            if (!rest.starts_with("if") || rest.size() == 2 || !std::isspace(static_cast<unsigned char>(rest[2])))
                fail("unexpected text after the right-hand side", reader.pos());
            guards = parse_guards(rest.substr(2), reader.pos() + 2);
        }

        try {
            return make_rule(std::move(name), kind, std::move(lhs), std::move(rhs), std::move(guards));
        } catch (const TheoryError& e) {
            throw TheoryError("line " + std::to_string(line_) + ": " + e.what(), line_);
        }
    }

private:
    // well-formed text that names something the theory language does not have
    [[noreturn]] void reject(const std::string& msg, std::size_t col) const
    {
        throw TheoryError("line " + std::to_string(line_) + ", column " + std::to_string(col + 1) + ": " + msg, line_);
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t col) const
    {
        throw SyntaxError("line " + std::to_string(line_) + ", column " + std::to_string(col + 1) + ": " + msg, col,
                          line_);
    }

    Pattern read_pattern(detail::SexprReader& reader)
    {
        try {
            return reader.read();
        } catch (const SyntaxError& e) {
            throw SyntaxError("line " + std::to_string(line_) + ": " + e.what(), e.offset(), line_);
        }
    }

    std::string parse_var(std::string_view tok, std::size_t col)
    {
        tok = trim(tok);
        if (tok.size() < 2 || tok.front() != '?' || !detail::valid_var_name(tok.substr(1)))
            fail("expected a pattern variable, got `" + std::string(tok) + "`", col);
        return std::string(tok.substr(1));
    }

    // `text` starts at `fold`; sets `consumed` to the length through `)`.
    DynamicRhs parse_fold(std::string_view text, std::size_t col, std::size_t& consumed)
    {
        auto open = text.find('(');
        auto close = text.find(')', open);
        if (close == std::string_view::npos)
            fail("unterminated fold(...)", col);
        consumed = close + 1;
        auto inner = text.substr(open + 1, close - open - 1);

        std::vector<std::string_view> parts;
        std::size_t start = 0;
        for (;;) {
            auto comma = inner.find(',', start);
            parts.push_back(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        auto op_text = trim(parts.front());
        auto op = fold_op_from_name(op_text);
        if (!op)
            reject("unknown fold operator `" + std::string(op_text) + "`", col);
        DynamicRhs d{*op, {}};
        for (std::size_t i = 1; i < parts.size(); ++i)
            d.args.push_back(parse_var(parts[i], col));
        return d;
    }

    std::vector<Guard> parse_guards(std::string_view text, std::size_t col)
    {
        std::vector<Guard> guards;
        std::size_t start = 0;
        for (;;) {
            auto amp = text.find("&&", start);
            auto piece = trim(text.substr(start, amp == std::string_view::npos ? text.npos : amp - start));
            guards.push_back(parse_guard(piece, col + start));
            if (amp == std::string_view::npos)
                break;
            start = amp + 2;
        }
        return guards;
    }

    Guard parse_guard(std::string_view text, std::size_t col)
    {
        auto open = text.find('(');
        if (open == std::string_view::npos || text.back() != ')')
            fail("malformed guard `" + std::string(text) + "`", col);
        auto name = trim(text.substr(0, open));
        auto kind = guard_from_name(name);
        if (!kind)
            reject("unknown guard `" + std::string(name) + "`", col);
        Guard g{*kind, {}};
        auto inner = text.substr(open + 1, text.size() - open - 2);
        std::size_t start = 0;
        for (;;) {
            auto comma = inner.find(',', start);
            g.args.push_back(parse_var(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start), col));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return g;
    }

    std::string_view text_;
    std::size_t line_;
};

bool keyword(std::string_view line, std::string_view word, std::string_view& rest)
{
    if (!line.starts_with(word) || line.size() == word.size() ||
        !std::isspace(static_cast<unsigned char>(line[word.size()])))
        return false;
    rest = line.substr(word.size());
    return true;
}

} // namespace

Theory parse_theory(std::string_view input)
{
    Theory th;
    bool has_header = false;
    std::set<std::string> names;
    std::size_t line_no = 0;

    while (!input.empty()) {
        ++line_no;
        auto nl = input.find('\n');
        std::string_view line = input.substr(0, nl);
        input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        std::string_view rest;
        if (keyword(line, "theory", rest) || line == "theory") {
            auto name = trim(rest);
            if (has_header)
                throw SyntaxError("line " + std::to_string(line_no) + ": duplicate `theory` header", 0, line_no);
            if (!th.rules.empty())
                throw SyntaxError("line " + std::to_string(line_no) + ": `theory` header must precede rules", 0, line_no);
            if (name.empty() || has_space(name))
                throw SyntaxError("line " + std::to_string(line_no) + ": expected `theory <name>`", 0, line_no);
            th.name = std::string(name);
            has_header = true;
        } else if (keyword(line, "rule", rest)) {
            if (!has_header)
                throw SyntaxError("line " + std::to_string(line_no) + ": missing `theory <name>` header", 0, line_no);
            Rule r = LineParser(rest, line_no).parse_rule();
            if (!names.insert(r.name).second)
                throw TheoryError("line " + std::to_string(line_no) + ": duplicate rule name `" + r.name + "`", line_no);
            th.rules.push_back(std::move(r));
        } else {
            throw SyntaxError("line " + std::to_string(line_no) + ": expected `theory` or `rule`", 0, line_no);
        }
    }
    if (!has_header)
        throw SyntaxError("missing `theory <name>` header", 0, line_no);
    return th;
}

Theory load_theory(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open theory file `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_theory(buf.str());
}

std::string print_rule(const Rule& r)
{
    std::string out = "rule " + r.name + ": " + print_pattern(r.lhs);
    out += r.kind == RuleKind::Bidirectional ? " == " : " => ";
    if (r.is_dynamic()) {
        const DynamicRhs& d = r.rhs_dynamic();
        out += "fold(" + std::string(fold_op_name(d.op));
        for (const auto& a : d.args)
            out += ", ?" + a;
        out += ")";
    } else {
        out += print_pattern(r.rhs_pattern());
    }
    for (std::size_t i = 0; i < r.guards.size(); ++i) {
        out += i ? " && " : " if ";
        out += print_guard(r.guards[i]);
    }
    return out;
}

std::string print_theory(const Theory& th)
{
    std::string out = "theory " + th.name + "\n";
    for (const Rule& r : th.rules)
        out += print_rule(r) + "\n";
    return out;
}

std::optional<Term> eval_dynamic(const DynamicRhs& d, const std::map<std::string, Atom>& bindings)
{
    std::vector<Atom> args;
    args.reserve(d.args.size());
    for (const auto& name : d.args) {
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw UnboundVariable(name);
        args.push_back(it->second);
    }
    if (auto result = eval_fold(d.op, args))
        return Term::leaf(std::move(*result));
    return std::nullopt;
}

bool check_guard_eclass(const Guard& g, const EMatchSubst& subst, const EGraph& graph)
{
    auto bound = [&](const std::string& var) {
        auto it = subst.bindings.find(var);
        if (it == subst.bindings.end())
            throw UnboundVariable(var);
        return graph.find(it->second);
    };
    EClassId cls = bound(g.args.at(0));
    const ConstFoldValue& v = graph.data(cls);
    auto known_kind = [&]() -> std::optional<Atom::Kind> {
        if (!v.is_known())
            return std::nullopt;
        return v.value().kind();
    };
    auto has_leaf = [&](auto pred) {
        const auto& nodes = graph.eclass(cls).nodes;
        return std::any_of(nodes.begin(), nodes.end(), [&](const ClassNode& cn) {
            auto atom = cn.node.atom();
            return atom && pred(*atom);
        });
    };

    switch (g.kind) {
    case GuardKind::IsInt:
        return known_kind() == Atom::Kind::Int;
    case GuardKind::IsBool:
        return known_kind() == Atom::Kind::Bool;
    case GuardKind::IsSym:
        return has_leaf([](const Atom& a) { return a.is_symbol(); });
    case GuardKind::IsLit:
        return v.is_known() || has_leaf([](const Atom& a) { return a.is_literal(); });
    case GuardKind::Nonzero:
        return known_kind() == Atom::Kind::Int && v.value().int_value() != 0;
    case GuardKind::IsZero:
        return known_kind() == Atom::Kind::Int && v.value().int_value() == 0;
    case GuardKind::Eq:
        return cls == bound(g.args.at(1));
    }
    return false;
}

} // namespace eqsat
