#include <doctest.h>

#include "setlab/complexity.hpp"
#include "setlab/parser.hpp"
#include "setlab/truth.hpp"
#include "support/check.hpp"
#include "support/gen.hpp"

using namespace setlab;

namespace {

struct Fixture {
    SetArena arena;
    LevelBuilder lb{arena};

    bool at(int level, const char* text, Assignment env = {}) {
        return model_check(lb, lb.build(level), parse_formula(text), env);
    }
};

} // namespace

TEST_SUITE("truth") {

TEST_CASE("atoms and connectives") {
    Fixture fx;
    SetArena& a = fx.arena;
    CHECK(fx.at(3, "x in y", {{"x", a.empty()}, {"y", a.vn(1)}}));
    CHECK(!fx.at(3, "x in y", {{"x", a.vn(1)}, {"y", a.vn(1)}}));
    CHECK(fx.at(3, "x = y", {{"x", a.vn(2)}, {"y", a.vn(2)}}));
    CHECK(fx.at(3, "~(x = y) & x in y", {{"x", a.vn(1)}, {"y", a.vn(2)}}));
    CHECK(fx.at(3, "x in y -> x = x", {{"x", a.vn(1)}, {"y", a.vn(1)}}));
}

TEST_CASE("quantifiers range over the level") {
    Fixture fx;
    SetArena& a = fx.arena;
    CHECK(fx.at(3, "exists v. forall u in v. ~(u = u)")); // the empty set exists
    CHECK(fx.at(3, "forall v. v in w | v = w | ~(v in w)", {{"w", a.vn(2)}}));
    // {∅,{∅}} has a two-element chain inside L3 but not inside L2.
    CHECK(fx.at(3, "exists v. exists u. u in v & v in w", {{"w", a.vn(2)}}));
    CHECK(fx.at(3, "exists v. v in w", {{"w", a.vn(2)}}));
    // The ordinal 2 is born at stage 3.
    CHECK(!fx.at(2, "exists v. Num(v, #2)"));
    CHECK(fx.at(3, "exists v. Num(v, #2)"));
    // Bounded quantifiers read their bound before binding the variable.
    CHECK(fx.at(3, "exists x in x. Empty(x)", {{"x", a.vn(1)}}));
}

TEST_CASE("native macro evaluators") {
    Fixture fx;
    SetArena& a = fx.arena;
    HSet kp = a.kpair(a.empty(), a.empty()); // {{∅}}, rank 2
    CHECK(fx.at(3, "Pair(x, y, z)", {{"x", a.empty()}, {"y", a.empty()}, {"z", kp}}));
    CHECK(!fx.at(3, "Pair(x, y, z)", {{"x", a.empty()}, {"y", a.vn(1)}, {"z", kp}}));
    CHECK(fx.at(3, "Trans(x)", {{"x", a.vn(2)}}));
    CHECK(!fx.at(3, "Trans(x)", {{"x", a.singleton(a.vn(1))}}));
    CHECK(fx.at(3, "Ord(x)", {{"x", a.vn(2)}}));
    CHECK(!fx.at(3, "Ord(x)", {{"x", a.singleton(a.vn(1))}}));
    CHECK(fx.at(3, "Empty(x)", {{"x", a.empty()}}));
    CHECK(fx.at(3, "Succ(x, y)", {{"x", a.vn(1)}, {"y", a.vn(2)}}));
    CHECK(!fx.at(3, "Succ(x, y)", {{"x", a.vn(2)}, {"y", a.vn(1)}}));
    CHECK(fx.at(3, "Num(x, #2)", {{"x", a.vn(2)}}));
    CHECK(!fx.at(3, "Num(x, #1)", {{"x", a.vn(2)}}));
    CHECK(fx.at(4, "TC(x, y)", {{"x", a.singleton(a.vn(1))}, {"y", a.vn(2)}}));
    CHECK(!fx.at(4, "TC(x, y)", {{"x", a.singleton(a.vn(1))}, {"y", a.vn(1)}}));
    CHECK(fx.at(3, "IsLevel(a, n)", {{"a", a.vn(2)}, {"n", a.vn(2)}}));
    CHECK(!fx.at(3, "IsLevel(a, n)", {{"a", a.vn(1)}, {"n", a.vn(2)}}));
    // Non-numeral index: never a level.
    CHECK(!fx.at(3, "IsLevel(a, n)", {{"a", a.vn(2)}, {"n", a.singleton(a.vn(1))}}));
}

TEST_CASE("placeholders have no evaluator") {
    Fixture fx;
    CHECK(error_code_of([&] { fx.at(3, "IsDelta0Code(c)", {{"c", fx.arena.empty()}}); }) ==
          Errc::no_evaluator);
}

TEST_CASE("domain discipline") {
    Fixture fx;
    SetArena& a = fx.arena;
    CHECK(error_code_of([&] { fx.at(2, "x = x", {{"x", a.vn(2)}}); }) == Errc::not_in_level);
    // Assignments to variables that are not free are never consulted.
    CHECK(error_code_of([&] { fx.at(3, "exists v. v = v", {{"y", a.vn(5)}}); }) == std::nullopt);
    std::vector<HSet> bad = {a.vn(1)}; // misses ∅
    CHECK(error_code_of([&] {
              model_check(fx.lb, bad, parse_formula("exists v. v = v"));
          }) == Errc::non_transitive_domain);
    CHECK(error_code_of([&] { fx.at(3, "x = y", {{"x", a.empty()}}); }) ==
          Errc::unbound_variable);
}

TEST_CASE("sigma0 truth is absolute") {
    Fixture fx;
    SetArena& a = fx.arena;
    gen::Rng rng(47);
    const Level& l3 = fx.lb.build(3);
    for (int i = 0; i < 60; ++i) {
        FormulaPtr f = gen::delta0(rng, {"x0", "x1"}, 2);
        for (HSet p : l3.elements)
            for (HSet q : l3.elements) {
                Assignment env{{"x0", p}, {"x1", q}};
                bool t = sigma0_truth(fx.lb, f, env);
                CHECK(t == model_check(fx.lb, fx.lb.build(3), f, env));
                CHECK(t == model_check(fx.lb, fx.lb.build(4), f, env));
            }
    }
    CHECK(error_code_of([&] {
              sigma0_truth(fx.lb, parse_formula("exists v. v = v"));
          }) == Errc::classification);
    CHECK(sigma0_truth(fx.lb, parse_formula("Num(x, #3)"), {{"x", a.vn(3)}}));
}

TEST_CASE("sigma_n truth against the model checker") {
    Fixture fx;
    for (int n = 1; n <= 3; ++n) {
        gen::Rng rng(100 + static_cast<std::uint64_t>(n));
        for (int i = 0; i < 25; ++i) {
            FormulaPtr f = gen::strict_prenex(rng, n, true, 2);
            REQUIRE(classify(f) == ComplexityClass::sigma(n));
            for (int lvl : {2, 3}) {
                const Level& lv = fx.lb.build(lvl);
                CHECK(sigma_n_truth(fx.lb, n, f, {}, lv.elements) ==
                      model_check(fx.lb, lv, f));
            }
        }
    }
    // Wrong level is a classification error.
    CHECK(error_code_of([&] {
              sigma_n_truth(fx.lb, 1, parse_formula("forall v. v = v"), {},
                            fx.lb.build(2).elements);
          }) == Errc::classification);
    // n = 0 accepts any unbounded-quantifier-free formula, even above Delta0.
    SetArena& a = fx.arena;
    CHECK(sigma_n_truth(fx.lb, 0, parse_formula("TC(x, y)"),
                        {{"x", a.singleton(a.vn(1))}, {"y", a.vn(2)}},
                        fx.lb.build(3).elements));
}

TEST_CASE("dual complements model truth") {
    Fixture fx;
    gen::Rng rng(53);
    const Level& l3 = fx.lb.build(3);
    for (int i = 0; i < 40; ++i) {
        FormulaPtr f = gen::strict_prenex(rng, 1 + rng.pick(3), rng.coin(), 2);
        CHECK(model_check(fx.lb, l3, f) != model_check(fx.lb, l3, dual(f)));
    }
}

TEST_CASE("least witness level") {
    Fixture fx;
    CHECK(least_witness_level(fx.lb, parse_formula("exists x. Empty(x)"), 4) == 1);
    CHECK(least_witness_level(fx.lb, parse_formula("exists x. Num(x, #1)"), 4) == 2);
    CHECK(least_witness_level(fx.lb, parse_formula("exists x. Num(x, #3)"), 4) == 4);
    CHECK(least_witness_level(fx.lb, parse_formula("exists x. Num(x, #5)"), 4) ==
          std::nullopt);
    // Universal sentences are fine too; the empty level satisfies them.
    CHECK(least_witness_level(fx.lb, parse_formula("forall x. x in x"), 4) == 0);
}

} // TEST_SUITE
