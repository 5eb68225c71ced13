#include "reader.hpp"

#include "eqsat/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace eqsat::detail {

bool is_delimiter(char c) noexcept
{
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '#';
}

void SexprReader::fail(const std::string& msg, std::size_t at) const
{
    throw SyntaxError("syntax error at offset " + std::to_string(base_ + at) + ": " + msg, base_ + at);
}

void SexprReader::skip_space()
{
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '#') {
            while (pos_ < text_.size() && text_[pos_] != '\n')
                ++pos_;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos_;
        } else {
            break;
        }
    }
}

std::string_view SexprReader::read_token()
{
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_]))
        ++pos_;
    return text_.substr(start, pos_ - start);
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

bool valid_var_name(std::string_view name) noexcept
{
    if (name.empty())
        return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
    });
}

Pattern SexprReader::read_atom(std::string_view token, std::size_t at)
{
    if (token.front() == '?') {
        if (!allow_vars_)
            fail("pattern variable `" + std::string(token) + "` not allowed in a term", at);
        std::string name(token.substr(1));
        if (!valid_var_name(name))
            fail("malformed pattern variable `" + std::string(token) + "`", at);
        return Pattern::var(std::move(name));
    }
    if (token == "true")
        return Pattern::lit(Atom::boolean(true));
    if (token == "false")
        return Pattern::lit(Atom::boolean(false));

    std::string_view unsigned_part = token.front() == '-' ? token.substr(1) : token;
    if (!unsigned_part.empty() && std::isdigit(static_cast<unsigned char>(unsigned_part.front()))) {
        const char* first = token.data();
        const char* last = token.data() + token.size();
        if (all_digits(unsigned_part)) {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last)
                fail("integer literal `" + std::string(token) + "` out of 64-bit range", at);
            return Pattern::lit(Atom::integer(v));
        }
        if (unsigned_part.find_first_of(".eE") != std::string_view::npos) {
            double v = 0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec == std::errc() && ptr == last && std::isfinite(v))
                return Pattern::lit(Atom::floating(v));
        }
        fail("malformed literal `" + std::string(token) + "`", at);
    }
    if (!Atom::valid_symbol_name(token))
        fail("malformed symbol `" + std::string(token) + "`", at);
    return Pattern::lit(Atom::symbol(std::string(token)));
}

Pattern SexprReader::read()
{
    skip_space();
    if (at_end())
        fail("unexpected end of input", pos_);
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == ')')
        fail("unbalanced `)`", pos_);
    if (c != '(')
        return read_atom(read_token(), start);

    ++pos_;
    skip_space();
    if (at_end())
        fail("unbalanced `(`", start);
    if (text_[pos_] == ')')
        fail("empty application `()`", start);
    if (text_[pos_] == '(')
        fail("operator position must be a symbol", pos_);

    std::size_t op_at = pos_;
    std::string_view op = read_token();
    if (op.front() == '?')
        fail("pattern variables cannot appear in operator position", op_at);
    Pattern head = read_atom(op, op_at);
    if (head.kind() != Pattern::Kind::Lit || !head.atom().is_symbol())
        fail("operator position must be a symbol, got `" + std::string(op) + "`", op_at);

    std::vector<Pattern> args;
    for (;;) {
        skip_space();
        if (at_end())
            fail("unbalanced `(`", start);
        if (text_[pos_] == ')') {
            ++pos_;
            break;
        }
        args.push_back(read());
    }
    if (args.empty())
        fail("zero-argument application `(" + std::string(op) + ")`", start);
    return Pattern::apply(std::string(op), std::move(args));
}

} // namespace eqsat::detail
