#include <doctest.h>

#include "setlab/complexity.hpp"
#include "setlab/parser.hpp"
#include "support/check.hpp"
#include "support/gen.hpp"

using namespace setlab;

namespace {
ComplexityClass cls(const char* text) { return classify(parse_formula(text)); }
} // namespace

TEST_SUITE("complexity") {

TEST_CASE("underlined level calculus") {
    CHECK(underlined_levels(parse_formula("x in y")) == std::pair{0, 0});
    CHECK(underlined_levels(parse_formula("exists x. x = x")) == std::pair{1, 2});
    CHECK(underlined_levels(parse_formula("~(exists x. x = x)")) == std::pair{2, 1});
    CHECK(underlined_levels(parse_formula("forall x. x = x")) == std::pair{2, 1});
    // Bounded quantifiers are transparent.
    CHECK(underlined_levels(parse_formula("forall v in w. exists x. x in v")) ==
          std::pair{1, 2});
    // Implication takes the duals of the antecedent.
    CHECK(underlined_levels(parse_formula("(exists x. x = x) -> exists y. y = y")) ==
          std::pair{2, 2});
    // Declared atom levels enter as given.
    CHECK(underlined_levels(parse_formula("TC(a, b)")) == std::pair{1, 1});
    CHECK(underlined_levels(parse_formula("Num(x, #2)")) == std::pair{0, 0});
}

TEST_CASE("classification table") {
    CHECK(cls("x in y") == ComplexityClass::delta0());
    CHECK(cls("forall v in x. v = v & Empty(v)") == ComplexityClass::delta0());
    CHECK(cls("exists x. x = x") == ComplexityClass::sigma(1));
    CHECK(cls("forall x. x = x") == ComplexityClass::pi(1));
    CHECK(cls("exists x. forall y. x in y") == ComplexityClass::sigma(2));
    CHECK(cls("forall x. exists y. forall z. z in y") == ComplexityClass::pi(3));
    // Bounded quantifiers may sit inside a strict prefix's matrix.
    CHECK(cls("exists x. forall v in x. v = v") == ComplexityClass::sigma(1));
    // Two quantifiers in the same direction are not strict.
    CHECK(cls("exists x. exists y. x in y") == ComplexityClass::usigma(1));
    CHECK(cls("forall x. forall y. x in y") == ComplexityClass::upi(1));
    // Connectives over quantifiers leave the strict fragment.
    CHECK(cls("(exists x. x = x) & exists y. y = y") == ComplexityClass::usigma(1));
    CHECK(cls("~(exists x. x = x)") == ComplexityClass::upi(1));
    // Interpreted atoms with declared level (1,1) block Delta0 but not
    // strictness at level 1 and above.
    CHECK(cls("TC(a, b)") == ComplexityClass::usigma(1));
    CHECK(cls("exists a. TC(a, b)") == ComplexityClass::sigma(1));
    CHECK(cls("IsLevel(a, b)") == ComplexityClass::usigma(1));
}

TEST_CASE("to_string") {
    CHECK(ComplexityClass::delta0().to_string() == "Delta0");
    CHECK(ComplexityClass::sigma(2).to_string() == "Sigma(2)");
    CHECK(ComplexityClass::upi(1).to_string() == "UPi(1)");
}

TEST_CASE("negation normal form") {
    CHECK(alpha_equal(nnf(parse_formula("~(x in y & x = y)")),
                      parse_formula("~(x in y) | ~(x = y)")));
    CHECK(alpha_equal(nnf(parse_formula("~(~(x in y))")), parse_formula("x in y")));
    CHECK(alpha_equal(nnf(parse_formula("x in y -> x = y")),
                      parse_formula("~(x in y) | x = y")));
    CHECK(alpha_equal(nnf(parse_formula("~(forall v. v = v)")),
                      parse_formula("exists v. ~(v = v)")));
    CHECK(alpha_equal(nnf(parse_formula("~(exists v in w. v = v)")),
                      parse_formula("forall v in w. ~(v = v)")));
    // Negated macros stay as negated atoms.
    CHECK(nnf(parse_formula("~(Empty(x))"))->kind == FKind::Not);
}

TEST_CASE("prenex dual") {
    FormulaPtr f = parse_formula("exists x. forall y. x in y");
    FormulaPtr d = dual(f);
    CHECK(alpha_equal(d, parse_formula("forall x. exists y. ~(x in y)")));
    CHECK(alpha_equal(dual(d), f));
    CHECK(classify(d) == ComplexityClass::pi(2));
    // Delta0 inputs dualize to their negation normal form.
    CHECK(alpha_equal(dual(parse_formula("x in y & x = y")),
                      parse_formula("~(x in y) | ~(x = y)")));
}

TEST_CASE("pair collapse shapes") {
    FormulaPtr phi = parse_formula("x0 in x1");
    FormulaPtr ex = pair_collapse(phi, "x0", "x1", "w");
    CHECK(print(ex) ==
          "exists u0 in w. exists x0 in u0. exists x1 in u0. Pair(x0, x1, w) & x0 in x1");
    CHECK(classify(ex) == ComplexityClass::delta0());
    CHECK(ex->free_vars() == std::vector<std::string>{"w"});
    FormulaPtr all = pair_collapse(phi, "x0", "x1", "w", CollapsePolarity::Universal);
    CHECK(print(all) ==
          "forall u0 in w. forall x0 in u0. forall x1 in u0. Pair(x0, x1, w) -> x0 in x1");
    CHECK(classify(all) == ComplexityClass::delta0());
    // Non-Delta0 input is rejected.
    CHECK(error_code_of([] {
              pair_collapse(parse_formula("exists y. x0 in y & x1 = x1"), "x0", "x1", "w");
          }) == Errc::precondition);
    CHECK(error_code_of([&] { pair_collapse(phi, "x0", "x0", "w"); }) == Errc::precondition);
}

TEST_CASE("normalize returns strict and Delta0 inputs unchanged") {
    FormulaPtr s = parse_formula("exists x. forall y. x in y");
    CHECK(normalize(s) == s);
    FormulaPtr d = parse_formula("forall v in w. v = v");
    CHECK(normalize(d) == d);
    // No unbounded quantifier at all: untouched even when atoms lift levels.
    FormulaPtr t = parse_formula("TC(a, b) & Empty(a)");
    CHECK(normalize(t) == t);
}

TEST_CASE("normalize collapses a same-direction pair") {
    FormulaPtr f = parse_formula("exists x. exists y. x in y");
    std::vector<NormalizeStep> steps;
    FormulaPtr g = normalize(f, INT_MAX, &steps);
    CHECK(classify(g) == ComplexityClass::sigma(1));
    REQUIRE(!steps.empty());
    CHECK(steps.front().rule == "freshen-binders");
    CHECK(steps.back().rule == "collapse-exists");
    CHECK(steps.back().premise_bearing);
    // Only the collapse needed a premise here.
    int premises = 0;
    for (const NormalizeStep& s : steps)
        premises += s.premise_bearing ? 1 : 0;
    CHECK(premises == 1);
}

TEST_CASE("normalize merges connective prefixes") {
    FormulaPtr f = parse_formula("(exists x. x = x) & exists y. Empty(y)");
    FormulaPtr g = normalize(f);
    CHECK(classify(g) == ComplexityClass::sigma(1));
    FormulaPtr h = normalize(parse_formula("(forall x. x = x) | forall y. y in z"));
    CHECK(classify(h) == ComplexityClass::pi(1));
}

TEST_CASE("collection moves and the refusal gate") {
    // A bounded universal over an existential needs Collection to reach
    // Sigma(1).
    FormulaPtr f = parse_formula("exists w. forall x in w. exists v. v in x");
    CHECK(classify(f) == ComplexityClass::usigma(1));
    std::vector<NormalizeStep> steps;
    FormulaPtr g = normalize(f, INT_MAX, &steps);
    CHECK(classify(g) == ComplexityClass::sigma(1));
    bool collected = false;
    for (const NormalizeStep& s : steps)
        if (s.rule == "collect-exists" || s.rule == "collect-forall") {
            collected = true;
            CHECK(s.premise_bearing);
        }
    CHECK(collected);
    // The same input is refused when Collection is capped below the level.
    CHECK(error_code_of([&] { normalize(f, 0); }) == Errc::normalization_refused);
    // Inputs reachable by pure moves alone ignore the cap.
    CHECK(classify(normalize(parse_formula("exists x. exists y. x in y"), 0)) ==
          ComplexityClass::sigma(1));
}

TEST_CASE("normalize reaches the classified level on generated formulas") {
    gen::Rng rng(43);
    int nontrivial = 0;
    for (int i = 0; i < 120; ++i) {
        FormulaPtr f = gen::underlined_closed(rng, 3, 2);
        ComplexityClass c = classify(f);
        FormulaPtr g = normalize(f);
        ComplexityClass cg = classify(g);
        if (c.strict()) {
            CHECK(g == f);
        } else {
            CHECK(cg.strict());
            CHECK(cg.n == c.n);
            CHECK((cg.kind == ComplexityClass::Kind::Sigma) ==
                  (c.kind == ComplexityClass::Kind::USigma));
            ++nontrivial;
        }
    }
    CHECK(nontrivial > 20); // the corpus genuinely exercises the rewrite
}

} // TEST_SUITE
