#include "doctest.h"

#include "eqsat/classic.hpp"
#include "eqsat/rules.hpp"
#include "eqsat/saturate.hpp"

#include "../support/oracles.hpp"

#include <random>
#include <set>

using namespace eqsat;

namespace {

const char* kArith = R"(theory arith
rule div-canon: (/ (* ?x ?y) ?z) => (* ?x (/ ?y ?z))
rule div-same:  (/ ?x ?x) => 1 if nonzero(?x)
rule mul-one:   (* ?x 1) => ?x
rule mul2-shift:(* ?x 2) => (<< ?x 1)
rule fold-div:  (/ ?a ?b) => fold(/, ?a, ?b) if is_int(?a) && is_int(?b)
)";

const Theory& arith()
{
    static const Theory th = parse_theory(kArith);
    return th;
}

const Theory& comm()
{
    static const Theory th = parse_theory("theory comm\nrule comm: (+ ?a ?b) == (+ ?b ?a)\n");
    return th;
}

} // namespace

TEST_CASE("fixpoints")
{
    auto r = rewrite_fixpoint(parse_term("(* a 1)"), arith(), 100);
    CHECK(r.result == parse_term("a"));
    CHECK(r.status == RewriteStatus::Fixpoint);
    CHECK(r.steps == 1);

    r = rewrite_fixpoint(parse_term("a"), arith(), 100);
    CHECK(r.result == parse_term("a"));
    CHECK(r.status == RewriteStatus::Fixpoint);
    CHECK(r.steps == 0);

    r = rewrite_fixpoint(parse_term("(/ (* a 2) 2)"), arith(), 100, true);
    CHECK(r.result == parse_term("a"));
    CHECK(r.status == RewriteStatus::Fixpoint);
    REQUIRE(r.trace.size() == r.steps);
    CHECK(r.trace.front().rule == "div-canon");
    CHECK(r.trace.front().after == parse_term("(* a (/ 2 2))"));
}

TEST_CASE("commutativity cycles")
{
    auto r = rewrite_fixpoint(parse_term("(+ x y)"), comm(), 100, true);
    CHECK(r.status == RewriteStatus::CycleDetected);
    CHECK(r.steps == 2);
    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].rule == "comm");
    CHECK(r.trace[0].after == parse_term("(+ y x)"));
    CHECK(r.trace[1].after == parse_term("(+ x y)"));
    // the cycle shows up as a repeated term in the trace
    CHECK(r.trace[1].after == r.trace[0].before);
}

TEST_CASE("step limit")
{
    Theory grow = parse_theory("theory grow\nrule wrap: (f ?x) => (f (g ?x))\n");
    auto r = rewrite_fixpoint(parse_term("(f a)"), grow, 5);
    CHECK(r.status == RewriteStatus::StepLimit);
    CHECK(r.steps == 5);
    CHECK(r.result == parse_term("(f (g (g (g (g (g a))))))"));
}

TEST_CASE("single steps: first rule, leftmost-outermost position")
{
    auto s = rewrite_once(parse_term("(/ (* a 2) 2)"), arith());
    REQUIRE(s);
    CHECK(s->rule == "div-canon");
    CHECK(s->position.empty());
    CHECK(s->after == parse_term("(* a (/ 2 2))"));

    CHECK_FALSE(rewrite_once(parse_term("b"), arith()));

    s = rewrite_once(parse_term("(* (* c 1) 1)"), arith());
    REQUIRE(s);
    CHECK(s->rule == "mul-one");
    CHECK(s->position.empty());
    CHECK(s->after == parse_term("(* c 1)"));

    // an earlier rule wins even if a later rule matches further out
    s = rewrite_once(parse_term("(* (/ b b) 1)"), parse_theory("theory t\nrule inner: (/ ?x ?x) => 1\n"
                                                                "rule outer: (* ?x 1) => ?x\n"));
    REQUIRE(s);
    CHECK(s->rule == "inner");
    CHECK(s->position == Position{0});
    CHECK(s->after == parse_term("(* 1 1)"));

    // leftmost among siblings
    s = rewrite_once(parse_term("(g (* p 1) (* q 1))"), arith());
    REQUIRE(s);
    CHECK(s->position == Position{0});
}

TEST_CASE("guards and folds in the classic backend")
{
    // nonzero fails on a symbol, so (/ b b) stays
    auto r = rewrite_fixpoint(parse_term("(/ b b)"), arith(), 10);
    CHECK(r.result == parse_term("(/ b b)"));
    r = rewrite_fixpoint(parse_term("(/ 6 3)"), arith(), 10);
    CHECK(r.result == parse_term("2"));
    // inexact division is not a rewrite, so the fold rule is skipped
    r = rewrite_fixpoint(parse_term("(/ 1 2)"), arith(), 10);
    CHECK(r.result == parse_term("(/ 1 2)"));
    CHECK(r.status == RewriteStatus::Fixpoint);
}

TEST_CASE("the reverse half of a bidirectional rule has its own name")
{
    Theory th = parse_theory("theory t\nrule shift: (<< ?x 1) == (* ?x 2)\n");
    auto s = rewrite_once(parse_term("(* a 2)"), th);
    REQUIRE(s);
    CHECK(s->rule == "shift:rev");
}

TEST_CASE("property: every traced step preserves integer semantics")
{
    std::mt19937_64 rng(0x7e57'0010);
    std::vector<Term> leaves = oracle::symbols({"a", "b", "c"});
    for (int k : {0, 1, 2, 4})
        leaves.push_back(Term::integer(k));
    oracle::TermGen gen(rng, {{"+", 2}, {"*", 2}, {"/", 2}}, leaves);
    int compared = 0;
    for (int run = 0; run < 300; ++run) {
        Term t = gen(4);
        auto r = rewrite_fixpoint(t, arith(), 50, true);
        for (int v = 0; v < 10; ++v) {
            auto val = oracle::random_valuation(rng, {"a", "b", "c"});
            for (const auto& step : r.trace) {
                auto before = oracle::eval_exact(step.before, val);
                auto after = oracle::eval_exact(step.after, val);
                if (before && after) {
                    CHECK(*before == *after);
                    ++compared;
                }
            }
        }
        if (r.status == RewriteStatus::Fixpoint) {
            // nothing applies anymore
            CHECK_FALSE(rewrite_once(r.result, arith()));
        }
        if (r.status == RewriteStatus::CycleDetected) {
            std::set<std::string> seen{print_term(t)};
            bool repeat = false;
            for (const auto& step : r.trace)
                repeat = repeat || !seen.insert(print_term(step.after)).second;
            CHECK(repeat);
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("property: classic results lie in the saturated congruence closure")
{
    std::mt19937_64 rng(0x7e57'0011);
    std::vector<Term> leaves = oracle::symbols({"a", "b"});
    for (int k : {1, 2})
        leaves.push_back(Term::integer(k));
    oracle::TermGen gen(rng, {{"*", 2}, {"/", 2}}, leaves);
    int proved = 0;
    for (int run = 0; run < 150; ++run) {
        Term t = gen(4);
        auto r = rewrite_fixpoint(t, arith(), 100);
        if (r.status != RewriteStatus::Fixpoint)
            continue;
        EGraph g;
        auto p = prove_equal(g, arith(), SaturationParams{}, t, r.result);
        CHECK_MESSAGE(p.result == ProofResult::Equal, print_term(t) << " vs " << print_term(r.result));
        ++proved;
    }
    CHECK(proved > 100);
}
