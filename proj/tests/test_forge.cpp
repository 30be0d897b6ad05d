#include <doctest.h>

#include "setlab/complexity.hpp"
#include "setlab/forge.hpp"
#include "setlab/parser.hpp"
#include "support/check.hpp"

using namespace setlab;

namespace {

struct Fixture {
    SetArena arena;
    LevelBuilder lb{arena};

    std::vector<HSet> sat(const Representation& r, int level) {
        return satisfiers(lb, r.sigmaForm, rep_var(r), lb.build(level));
    }
};

} // namespace

TEST_SUITE("forge") {

TEST_CASE("kleene representation pins the least capturing level") {
    Fixture fx;
    Representation r = kleene_representation(parse_formula("Empty(x)"), "x");
    CHECK(r.label == "Empty(x)");
    CHECK(r.sigmaForm->free_vars() == std::vector<std::string>{rep_var(r)});
    CHECK(r.piDual->free_vars() == std::vector<std::string>{rep_var(r)});
    // ∃x Empty(x) first holds at level 1, so the point is the ordinal 1.
    CHECK(fx.sat(r, 1).empty()); // the ordinal 1 is not yet an element there
    CHECK(fx.sat(r, 2) == std::vector<HSet>{fx.arena.vn(1)});
    CHECK(fx.sat(r, 4) == std::vector<HSet>{fx.arena.vn(1)});
    // The emitted form is underlined; its normalization is strictly Sigma_1.
    CHECK(classify(r.sigmaForm).n == 1);
    CHECK(classify(normalize(r.sigmaForm)) == ComplexityClass::sigma(1));
    CHECK(classify(normalize(r.piDual)) == ComplexityClass::pi(1));
    CHECK(error_code_of(
              [] { kleene_representation(parse_formula("exists y. x in y"), "x"); }) ==
          Errc::classification);
}

TEST_CASE("pi dual agrees wherever the sigma point exists") {
    Fixture fx;
    Representation r = kleene_representation(parse_formula("Num(x, #1)"), "x");
    // The point is the ordinal 2: {∅} first appears in level 2.
    CHECK(fx.sat(r, 3) == std::vector<HSet>{fx.arena.vn(2)});
    const Level& l3 = fx.lb.build(3);
    std::vector<HSet> piSat = satisfiers(fx.lb, r.piDual, rep_var(r), l3);
    CHECK(piSat == std::vector<HSet>{fx.arena.vn(2)});
    // Below the point's birth the dual is vacuously total.
    CHECK(satisfiers(fx.lb, r.piDual, rep_var(r), fx.lb.build(1)) ==
          fx.lb.build(1).elements);
}

TEST_CASE("successor representation") {
    Fixture fx;
    Representation one = kleene_representation(parse_formula("Empty(x)"), "x");
    Representation two = successor_representation(one);
    CHECK(two.label == "Empty(x)+1");
    CHECK(fx.sat(two, 4) == std::vector<HSet>{fx.arena.vn(2)});
    CHECK(fx.sat(two, 2).empty()); // the ordinal 2 is absent from level 2
    Representation three = successor_representation(two);
    CHECK(fx.sat(three, 4) == std::vector<HSet>{fx.arena.vn(3)});
    CHECK(classify(normalize(two.sigmaForm)) == ComplexityClass::sigma(1));
}

TEST_CASE("exists sentence") {
    Fixture fx;
    Representation one = kleene_representation(parse_formula("Empty(x)"), "x");
    FormulaPtr s = exists_sentence(one);
    CHECK(s->free_vars().empty());
    CHECK(least_witness_level(fx.lb, s, 4) == 2);
    Representation two = successor_representation(one);
    CHECK(least_witness_level(fx.lb, exists_sentence(two), 4) == 3);
}

TEST_CASE("comparison sentence") {
    Fixture fx;
    Representation one = kleene_representation(parse_formula("Empty(x)"), "x");
    Representation two = successor_representation(one);
    const Level& l4 = fx.lb.build(4);
    CHECK(model_check(fx.lb, l4, comp_sentence(one, two)));
    CHECK(!model_check(fx.lb, l4, comp_sentence(two, one)));
    CHECK(!model_check(fx.lb, l4, comp_sentence(one, one)));
    CHECK(classify(normalize(comp_sentence(one, two))) == ComplexityClass::pi(1));
}

TEST_CASE("templates splice the theory definition once") {
    FormulaPtr theory = parse_formula("IsSigma1Code(t)");
    FormulaPtr rfn = rfn_template(theory, "a");
    CHECK(rfn->free_vars() == std::vector<std::string>{"a"});
    std::string rp = print(rfn);
    CHECK(rp.find("IsDelta0Code") != std::string::npos);
    CHECK(rp.find("CodesExistsInLevel") != std::string::npos);
    CHECK(rp.find("SatCode") != std::string::npos);
    // Exactly one splice of the theory definition.
    std::size_t first = rp.find("IsSigma1Code");
    CHECK(first != std::string::npos);
    CHECK(rp.find("IsSigma1Code", first + 1) == std::string::npos);

    FormulaPtr phit = phiT_template(theory);
    CHECK(phit->free_vars().size() == 1);
    std::string pp = print(phit);
    CHECK(pp.find("SatSigma1") != std::string::npos);
    CHECK(pp.find("IsSigma1Code") != std::string::npos);

    // The slot must be a single free variable.
    CHECK(error_code_of([] { rfn_template(parse_formula("SatSigma1(c, d)"), "a"); }) ==
          Errc::slot_arity);
    CHECK(error_code_of([] { phiT_template(parse_formula("exists x. Empty(x)")); }) ==
          Errc::slot_arity);
}

TEST_CASE("spectrum") {
    Fixture fx;
    FormulaPtr s1 = parse_formula("exists x. Empty(x)");
    FormulaPtr s2 = parse_formula("exists x. Num(x, #2)");
    SpectrumResult one = spectrum(fx.lb, {s1}, 4);
    CHECK(one.value == 1);
    REQUIRE(one.perSentence.size() == 1);
    CHECK(one.perSentence[0].second == 1);
    SpectrumResult both = spectrum(fx.lb, {s1, s2}, 4);
    CHECK(both.value == 3); // the ordinal 2 first appears in level 3
    CHECK(both.perSentence[1].second == 3);
    // A sentence out of reach pushes the joint value out of reach.
    SpectrumResult far = spectrum(fx.lb, {s1, parse_formula("exists x. Num(x, #5)")}, 4);
    CHECK(far.value == std::nullopt);
    // Underlined Sigma_1 sentences are accepted as they come from the forge.
    Representation one_r = kleene_representation(parse_formula("Empty(x)"), "x");
    SpectrumResult forged = spectrum(fx.lb, {exists_sentence(one_r)}, 4);
    CHECK(forged.value == 2);
    // Pi sentences and open formulas are rejected.
    CHECK(error_code_of([&] { spectrum(fx.lb, {parse_formula("forall x. x = x")}, 4); }) ==
          Errc::classification);
    CHECK(error_code_of([&] { spectrum(fx.lb, {parse_formula("Empty(x)")}, 4); }) ==
          Errc::precondition);
}

} // TEST_SUITE
