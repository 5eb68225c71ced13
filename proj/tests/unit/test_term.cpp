#include "doctest.h"

#include "eqsat/error.hpp"
#include "eqsat/term.hpp"

#include "../support/oracles.hpp"

#include <random>

using namespace eqsat;

TEST_CASE("atoms parse by shape")
{
    CHECK(parse_term("a") == Term::sym("a"));
    CHECK(parse_term("42").atom() == Atom::integer(42));
    CHECK(parse_term("-7").atom() == Atom::integer(-7));
    CHECK(parse_term("true").atom() == Atom::boolean(true));
    CHECK(parse_term("false").atom() == Atom::boolean(false));
    CHECK(parse_term("2.5").atom() == Atom::floating(2.5));
    CHECK(parse_term("1e3").atom() == Atom::floating(1000.0));
    // a lone minus is an ordinary symbol
    CHECK(parse_term("-").atom() == Atom::symbol("-"));
    CHECK(parse_term("x'").atom().kind() == Atom::Kind::Symbol);
}

TEST_CASE("the worked example parses into the expected tree")
{
    Term t = parse_term("(/ (* a 2) 2)");
    Term want = Term::apply("/", {Term::apply("*", {Term::sym("a"), Term::integer(2)}), Term::integer(2)});
    CHECK(t == want);
    CHECK(t.arity() == 2);
    CHECK(t.op() == "/");
}

TEST_CASE("syntax errors carry an offset")
{
    auto offset_of = [](const char* text) -> std::size_t {
        try {
            parse_term(text);
        } catch (const SyntaxError& e) {
            return e.offset();
        }
        FAIL("no syntax error for " << text);
        return 0;
    };
    CHECK_THROWS_AS(parse_term("(f)"), SyntaxError);
    CHECK_THROWS_AS(parse_term("()"), SyntaxError);
    CHECK_THROWS_AS(parse_term(""), SyntaxError);
    CHECK_THROWS_AS(parse_term("(+ 1"), SyntaxError);
    CHECK_THROWS_AS(parse_term("(+ 1 2))"), SyntaxError);
    CHECK_THROWS_AS(parse_term("a b"), SyntaxError);
    CHECK_THROWS_AS(parse_term("12abc"), SyntaxError);
    CHECK_THROWS_AS(parse_term("99999999999999999999"), SyntaxError);
    CHECK_THROWS_AS(parse_term("((f a) b)"), SyntaxError);
    CHECK_THROWS_AS(parse_term("?x"), SyntaxError);
    CHECK(offset_of("a b") == 2);
    CHECK(offset_of("(+ 1 2))") == 7);
}

TEST_CASE("printing is canonical")
{
    CHECK(print_term(Term::integer(1)) == "1");
    CHECK(print_term(parse_term("(+ a b)")) == "(+ a b)");
    CHECK(print_term(parse_term("( +  a   b )")) == "(+ a b)");
    CHECK(print_term(parse_term("(f\n  a # comment\n  b)")) == "(f a b)");
    CHECK(print_term(parse_term("2.0")) == "2.0");
    CHECK(print_term(parse_term("(g true -3)")) == "(g true -3)");
}

TEST_CASE("size and depth")
{
    CHECK(term_size(parse_term("a")) == 1);
    CHECK(term_depth(parse_term("a")) == 1);
    CHECK(term_size(parse_term("(/ (* a 2) 2)")) == 5);
    CHECK(term_depth(parse_term("(/ (* a 2) 2)")) == 3);
    CHECK(term_size(parse_term("(+ a (+ b c))")) == 5);
    CHECK(term_depth(parse_term("(+ a (+ b c))")) == 3);
}

TEST_CASE("symbol names are validated")
{
    CHECK_THROWS(Atom::symbol(""));
    CHECK_THROWS(Atom::symbol("?x"));
    CHECK_THROWS(Atom::symbol("1x"));
    CHECK_THROWS(Atom::symbol("a b"));
    CHECK_THROWS(Atom::symbol("(a"));
    CHECK_THROWS(Term::apply("f", {}));
    CHECK_NOTHROW(Atom::symbol("<<"));
}

TEST_CASE("atom equality is kind-sensitive")
{
    CHECK_FALSE(Atom::integer(1) == Atom::floating(1.0));
    CHECK_FALSE(Atom::integer(1) == Atom::boolean(true));
    CHECK(Atom::floating(0.5) == Atom::floating(0.5));
    // bitwise comparison tells the two zeros apart
    CHECK_FALSE(Atom::floating(0.0) == Atom::floating(-0.0));
}

TEST_CASE("property: print/parse round trip, size and depth recurrences")
{
    std::mt19937_64 rng(0x7e57'0001);
    std::vector<Term> leaves = oracle::symbols({"a", "b", "c", "-", "<<"});
    leaves.push_back(Term::integer(0));
    leaves.push_back(Term::integer(-12));
    leaves.push_back(Term::leaf(Atom::boolean(true)));
    leaves.push_back(Term::leaf(Atom::floating(0.25)));
    oracle::TermGen gen(rng, {{"f", 1}, {"+", 2}, {"g", 3}}, leaves);

    for (int i = 0; i < 500; ++i) {
        Term t = gen(6);
        std::string once = print_term(t);
        Term back = parse_term(once);
        REQUIRE(back == t);
        CHECK(print_term(back) == once);

        std::size_t size = 1, depth = 0;
        for (const Term& a : t.args()) {
            size += term_size(a);
            depth = std::max(depth, term_depth(a));
        }
        CHECK(term_size(t) == size);
        CHECK(term_depth(t) == depth + 1);
    }
}
