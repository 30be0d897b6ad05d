#include <doctest.h>

#include <map>
#include <set>

#include "setlab/formula.hpp"
#include "setlab/godel.hpp"
#include "setlab/macro.hpp"
#include "setlab/parser.hpp"
#include "support/check.hpp"
#include "support/gen.hpp"

using namespace setlab;

TEST_SUITE("formula") {

TEST_CASE("parse and print round trip") {
    const char* samples[] = {
        "x in y",
        "x = y",
        "~(x = y)",
        "x in y & y in z | x = z",
        "x = x -> y = y -> z = z",
        "forall v. v = v",
        "exists v in w. v in w",
        "forall a. exists b. a in b & ~(a = b)",
        "Pair(a, b, c)",
        "Num(x, #3)",
        "TC(a, b)",
        "exists v. Ord(v) & (forall u in v. Empty(u))",
    };
    for (const char* s : samples) {
        FormulaPtr f = parse_formula(s);
        CHECK(print(f) == s);                        // samples are already in print form
        CHECK(alpha_equal(parse_formula(print(f)), f));
        CHECK(canonical_print(f) == canonical_print(parse_formula(print(f))));
    }
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_formula("a in b & c in d | e in f")->kind == FKind::Or);
    CHECK(parse_formula("a in b | c in d & e in f")->kind == FKind::Or);
    FormulaPtr imp = parse_formula("x = x -> y = y -> z = z");
    CHECK(imp->kind == FKind::Implies);
    CHECK(imp->right->kind == FKind::Implies); // right associative
    FormulaPtr conj = parse_formula("a = a & b = b & c = c");
    CHECK(conj->kind == FKind::And);
    CHECK(conj->left->kind == FKind::And); // left associative
    // A quantifier body extends to the end.
    FormulaPtr q = parse_formula("exists v. v = v & v in v");
    CHECK(q->kind == FKind::Exists);
    CHECK(q->left->kind == FKind::And);
}

TEST_CASE("parse errors carry the syntax code") {
    CHECK(error_code_of([] { parse_formula("x ="); }) == Errc::syntax);
    CHECK(error_code_of([] { parse_formula("forall . x = x"); }) == Errc::syntax);
    CHECK(error_code_of([] { parse_formula("x = y)"); }) == Errc::syntax);
    CHECK(error_code_of([] { parse_formula("Pair(a, b"); }) == Errc::syntax);
    CHECK(error_code_of([] { parse_formula(""); }) == Errc::syntax);
}

TEST_CASE("free variables") {
    FormulaPtr f = parse_formula("x in y & forall x. x = z");
    CHECK(f->free_vars() == std::vector<std::string>{"x", "y", "z"});
    CHECK(free_vars_in_order(f) == std::vector<std::string>{"x", "y", "z"});
    FormulaPtr g = parse_formula("z = y & x in y");
    CHECK(free_vars_in_order(g) == std::vector<std::string>{"z", "y", "x"});
    CHECK(g->has_free("x"));
    CHECK(!parse_formula("forall x. x = x")->has_free("x"));
    // The bound of a bounded quantifier is free.
    CHECK(parse_formula("forall v in w. v = v")->free_vars() == std::vector<std::string>{"w"});
}

TEST_CASE("alpha equality and canonical print") {
    FormulaPtr a = parse_formula("forall x. exists y. x in y");
    FormulaPtr b = parse_formula("forall u. exists v. u in v");
    CHECK(alpha_equal(a, b));
    CHECK(canonical_print(a) == canonical_print(b));
    CHECK(!alpha_equal(a, parse_formula("forall x. exists y. y in x")));
    CHECK(alpha_equal(alpha_canonical(a), b));
}

TEST_CASE("substitution avoids capture") {
    FormulaPtr f = parse_formula("forall y. x in y");
    FormulaPtr g = substitute(f, "x", "y");
    CHECK(g->has_free("y"));
    CHECK(!g->has_free("x"));
    CHECK(alpha_equal(g, parse_formula("forall u. y in u")));
    // No-op when the variable is not free.
    FormulaPtr h = parse_formula("forall x. x = x");
    CHECK(alpha_equal(substitute(h, "x", "y"), h));
}

TEST_CASE("freshen_binders removes shadowing") {
    FormulaPtr f = parse_formula("forall x. (exists x. x = x) & x in x");
    FormulaPtr g = freshen_binders(f);
    CHECK(alpha_equal(f, g));
    CHECK(g->var != g->left->left->var); // distinct binder names after the pass
}

TEST_CASE("relativize bounds every quantifier") {
    FormulaPtr f = parse_formula("exists v. forall u. v in u");
    CHECK(print(relativize(f, "a")) == "exists v in a. forall u in a. v in u");
    // A binder named like the bound is renamed away.
    FormulaPtr g = parse_formula("exists a. a = a");
    FormulaPtr rg = relativize(g, "a");
    CHECK(rg->kind == FKind::BoundedExists);
    CHECK(rg->var2 == "a");
    CHECK(rg->var != "a");
    CHECK(error_code_of([&] { relativize(g, "a", false); }) == Errc::capture);
    // Bounded quantifiers stay as they are.
    FormulaPtr h = parse_formula("forall v in w. v = v");
    CHECK(alpha_equal(relativize(h, "a"), h));
}

TEST_CASE("macro arguments") {
    FormulaPtr f = parse_formula("Num(x, #7)");
    REQUIRE(f->kind == FKind::Macro);
    CHECK(f->args.size() == 2);
    CHECK(f->args[0].is_var());
    CHECK(f->args[1].nat == 7);
    CHECK(parse_formula("TC(a, b)")->kind == FKind::InterpretedAtom);
    CHECK(parse_formula("IsLevel(a, b)")->kind == FKind::InterpretedAtom);
    CHECK(parse_formula("Empty(x)")->kind == FKind::Macro);
    // Arity and name are checked against the registry at parse time.
    CHECK(error_code_of([] { parse_formula("Pair(a, b)"); }) == Errc::syntax);
    CHECK(error_code_of([] { parse_formula("Unknown(a)"); }) == Errc::syntax);
}

TEST_CASE("macro expansion") {
    FormulaPtr f = expand_macros(parse_formula("Empty(x)"), builtin_registry());
    CHECK(f->kind != FKind::Macro);
    CHECK(f->free_vars() == std::vector<std::string>{"x"});
    // Interpreted atoms are carried through untouched.
    FormulaPtr g = expand_macros(parse_formula("TC(a, b) & Succ(a, b)"), builtin_registry());
    CHECK(g->left->kind == FKind::InterpretedAtom);
    CHECK(g->right->kind != FKind::Macro);
    // Numeral descriptions grow linearly, not exponentially.
    std::size_t n20 = vn_equals("x", 20)->node_count();
    std::size_t n40 = vn_equals("x", 40)->node_count();
    CHECK(n40 < 3 * n20);
}

TEST_CASE("codes are injective and monotone in print length") {
    std::vector<std::string> texts = {"x in y",
                                      "x = y",
                                      "~(x in y)",
                                      "forall v. v = v",
                                      "forall u. u = u & u in u",
                                      "exists v in w. Empty(v)",
                                      "Pair(a, b, c)"};
    std::map<Nat, std::string> seen;
    for (const std::string& t : texts) {
        FormulaPtr f = parse_formula(t);
        Nat code = encode(f);
        CHECK(decode(code)->kind == f->kind);
        CHECK(alpha_equal(decode(code), f));
        CHECK(code_to_text(code) == canonical_print(f));
        auto [it, fresh] = seen.emplace(code, t);
        CHECK(fresh);
    }
    // Alpha-equal formulas share one code.
    CHECK(encode(parse_formula("forall x. x = x")) == encode(parse_formula("forall y. y = y")));
    // Longer canonical prints mean strictly larger codes.
    CHECK(encode(parse_formula("x in y")) < encode(parse_formula("forall v. v = v")));
}

TEST_CASE("generated formulas round trip through print") {
    gen::Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = gen::underlined_closed(rng, 3, 3);
        CHECK(alpha_equal(parse_formula(print(f)), f));
        CHECK(code_to_text(encode(f)) == canonical_print(f));
    }
}

} // TEST_SUITE
