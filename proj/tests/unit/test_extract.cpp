#include "doctest.h"

#include "eqsat/error.hpp"
#include "eqsat/extract.hpp"
#include "eqsat/rules.hpp"
#include "eqsat/saturate.hpp"

#include "../support/oracles.hpp"

#include <random>

using namespace eqsat;

TEST_CASE("single leaf")
{
    EGraph g;
    EClassId a = g.add_term(parse_term("a"));
    auto [t, cost] = extract_best(g, a, AstSize{});
    CHECK(t == parse_term("a"));
    CHECK(cost == 1);
}

TEST_CASE("the saturated worked example extracts to a")
{
    EGraph g;
    EClassId root = g.add_term(parse_term("(/ (* a 2) 2)"));
    run_saturation(g, parse_theory("theory arith\n"
                                   "rule div-canon: (/ (* ?x ?y) ?z) => (* ?x (/ ?y ?z))\n"
                                   "rule div-same:  (/ ?x ?x) => 1 if nonzero(?x)\n"
                                   "rule mul-one:   (* ?x 1) => ?x\n"
                                   "rule mul2-shift:(* ?x 2) => (<< ?x 1)\n"
                                   "rule fold-div:  (/ ?a ?b) => fold(/, ?a, ?b) if is_int(?a) && is_int(?b)\n"),
                   {});
    auto [t, cost] = extract_best(g, root, AstSize{});
    CHECK(t == parse_term("a"));
    CHECK(cost == 1);
}

TEST_CASE("operator weights pick the cheaper spelling")
{
    EGraph g;
    EClassId shl = g.add_term(parse_term("(<< a 1)"));
    EClassId mul = g.add_term(parse_term("(* a 2)"));
    g.merge(shl, mul);
    g.rebuild();
    OpWeights w;
    w.weights = {{"*", 4}, {"<<", 1}};
    auto [t, cost] = extract_best(g, mul, w);
    CHECK(t == parse_term("(<< a 1)"));
    CHECK(cost == 3);

    // flip the weights and the other spelling wins
    w.weights = {{"*", 1}, {"<<", 4}};
    CHECK(extract_best(g, mul, w).first == parse_term("(* a 2)"));
    // equal cost: the earlier-inserted node wins
    CHECK(extract_best(g, mul, AstSize{}).first == parse_term("(<< a 1)"));
}

TEST_CASE("the extraction table")
{
    EGraph empty;
    CHECK(extract_analysis(empty, AstSize{}).table().empty());

    EGraph g;
    EClassId root = g.add_term(parse_term("(+ a b)"));
    auto ex = extract_analysis(g, AstSize{});
    REQUIRE(ex.table().size() == 3);
    std::multiset<double> costs;
    for (const auto& [id, best] : ex.table())
        costs.insert(best.cost);
    CHECK(costs == std::multiset<double>{1, 1, 3});
    CHECK(ex.term(g, root) == parse_term("(+ a b)"));
}

TEST_CASE("a class defined only through itself is unextractable")
{
    EGraph g;
    EClassId a = g.add_term(parse_term("a"));
    EClassId loop = g.add_self_loop("h");
    auto ex = extract_analysis(g, AstSize{});
    CHECK(ex.table().size() == 1);
    CHECK(ex.best(a));
    CHECK_FALSE(ex.best(loop));
    CHECK_THROWS_AS(extract_best(g, loop, AstSize{}), Unextractable);
    CHECK_THROWS_AS(ex.term(g, loop), Unextractable);

    // once a base case joins the class it becomes extractable through it
    g.merge(loop, a);
    g.rebuild();
    auto [t, cost] = extract_best(g, loop, AstSize{});
    CHECK(t == parse_term("a"));
    CHECK(cost == 1);
}

TEST_CASE("cycles through a base case extract the base case")
{
    EGraph g;
    EClassId x = g.add_term(parse_term("x"));
    EClassId fx = g.add_node(ENode{"f", {x}});
    g.merge(x, fx);
    g.rebuild();
    auto [t, cost] = extract_best(g, fx, AstSize{});
    CHECK(t == parse_term("x"));
    CHECK(cost == 1);
    CHECK(oracle::check_invariants(g).empty());
}

TEST_CASE("dirty graphs and unknown ids are rejected")
{
    EGraph g;
    EClassId a = g.add_term(parse_term("(f a)"));
    g.merge(a, g.add_term(parse_term("b")));
    CHECK_THROWS_AS(extract_best(g, a, AstSize{}), DirtyGraph);
    g.rebuild();
    CHECK_THROWS_AS(extract_best(g, EClassId{77}, AstSize{}), InvalidId);
}

TEST_CASE("weights files")
{
    OpWeights w = parse_op_weights("# costs\n* 4\n<< 1   # cheap\n\n+ 0.5\n");
    CHECK(w.weight("*") == 4);
    CHECK(w.weight("<<") == 1);
    CHECK(w.weight("+") == 0.5);
    CHECK(w.weight("unknown") == 1);
    CHECK_THROWS_AS(parse_op_weights("* 0\n"), SyntaxError);
    CHECK_THROWS_AS(parse_op_weights("* -1\n"), SyntaxError);
    CHECK_THROWS_AS(parse_op_weights("* lots\n"), SyntaxError);
    CHECK_THROWS_AS(parse_op_weights("* 1 2\n"), SyntaxError);
    CHECK_THROWS_AS(parse_op_weights("*\n"), SyntaxError);
    CHECK_THROWS_AS(load_op_weights("/nonexistent/weights.txt"), std::runtime_error);
}

TEST_CASE("term costs")
{
    Term t = parse_term("(+ a (* b (f c)))");
    CHECK(term_cost(t, AstSize{}) == 6);
    CHECK(term_cost(t, AstDepth{}) == 4);
    OpWeights w;
    w.weights = {{"*", 3}, {"c", 10}};
    CHECK(term_cost(t, w) == 1 + 1 + 3 + 1 + 1 + 10);
}

TEST_CASE("property: extraction is optimal against size-bounded enumeration")
{
    std::mt19937_64 rng(0x7e57'000e);
    std::vector<Term> leaves = oracle::symbols({"a", "b", "c"});
    leaves.push_back(Term::integer(1));
    oracle::TermGen gen(rng, {{"f", 1}, {"g", 2}, {"h", 2}}, leaves);
    const double weight_choices[] = {0.5, 1, 1.5, 2, 3, 4};
    int compared = 0;

    for (int run = 0; run < 120; ++run) {
        EGraph g(no_analysis());
        while (g.node_count() < 25)
            g.add_term(gen(4));
        for (int i = 0; i < 4; ++i) {
            auto ids = g.class_ids();
            g.merge(ids[gen.pick(ids.size())], ids[gen.pick(ids.size())]);
        }
        g.rebuild();

        OpWeights w;
        for (const char* op : {"f", "g", "h", "a", "b", "c", "1"})
            w.weights[op] = weight_choices[gen.pick(6)];

        for (const CostFunction& cf : {CostFunction{AstSize{}}, CostFunction{w}}) {
            auto weight = [&](const ENode& n) {
                if (const auto* ow = std::get_if<OpWeights>(&cf))
                    return ow->weight(n.label());
                return 1.0;
            };
            auto oracle_min = oracle::min_cost_up_to_size(g, 12, weight);
            auto ex = extract_analysis(g, cf);
            for (EClassId c : g.class_ids()) {
                const BestNode* b = ex.best(c);
                REQUIRE(b);
                Term t = ex.term(g, c);
                CHECK(term_cost(t, cf) == b->cost);
                auto it = oracle_min.find(c.value);
                if (it == oracle_min.end())
                    continue;
                // the oracle only sees terms of up to 12 nodes
                CHECK(b->cost <= it->second);
                if (term_size(t) <= 12) {
                    CHECK(b->cost == it->second);
                    ++compared;
                }
                EGraph copy = g;
                CHECK(copy.add_term(t) == c);
                CHECK(copy.node_count() == g.node_count());
            }
        }
    }
    CHECK(compared > 1000);
}

TEST_CASE("property: ast-size and ast-depth costs equal size and depth of the extracted term")
{
    std::mt19937_64 rng(0x7e57'000f);
    oracle::TermGen gen(rng, {{"f", 1}, {"g", 2}}, oracle::symbols({"a", "b"}));
    for (int run = 0; run < 100; ++run) {
        EGraph g(no_analysis());
        for (int i = 0; i < 4; ++i)
            g.add_term(gen(5));
        auto ids = g.class_ids();
        g.merge(ids[gen.pick(ids.size())], ids[gen.pick(ids.size())]);
        g.rebuild();
        for (EClassId c : g.class_ids()) {
            auto [ts, cs] = extract_best(g, c, AstSize{});
            CHECK(cs == static_cast<double>(term_size(ts)));
            auto [td, cd] = extract_best(g, c, AstDepth{});
            CHECK(cd == static_cast<double>(term_depth(td)));
            // repeated extraction is identical
            CHECK(extract_best(g, c, AstDepth{}).first == td);
        }
    }
}
