#include "setlab/forge.hpp"

#include <algorithm>

#include "setlab/complexity.hpp"

namespace setlab {

namespace {

// Preferred name, or the first fresh one when it is taken.
std::string pick(const std::string& want, std::vector<std::string>& used) {
    std::string name = want;
    if (std::find(used.begin(), used.end(), name) != used.end())
        name = fresh_var(used);
    used.push_back(name);
    return name;
}

FormulaPtr pi_companion(const FormulaPtr& sigma, const std::string& v) {
    std::vector<std::string> used = all_vars(sigma);
    std::string y = pick("y", used);
    return Formula::forall(y, Formula::implies(substitute(sigma, v, y), Formula::eq(v, y)));
}

} // namespace

std::string rep_var(const Representation& r) {
    std::vector<std::string> fv = free_vars_in_order(r.sigmaForm);
    if (fv.size() != 1)
        fail(Errc::precondition, "representation must have exactly one free variable");
    return fv[0];
}

Representation kleene_representation(const FormulaPtr& a, const std::string& x,
                                     const MacroRegistry& reg) {
    ComplexityClass c = classify(a, reg);
    if (!(c == ComplexityClass::delta0()))
        fail(Errc::classification,
             "kleene_representation needs a Delta_0 matrix, got " + c.to_string());
    std::vector<std::string> used = all_vars(a);
    used.push_back(x);
    std::string xi = pick("xi", used);
    std::string lv = pick("a", used);
    std::string eta = pick("eta", used);
    FormulaPtr captured = Formula::exists(
        lv, Formula::land(Formula::atom("IsLevel", {MacroArg::v(lv), MacroArg::v(xi)}),
                          Formula::bexists(x, lv, a)));
    FormulaPtr missedBelow = Formula::bforall(
        eta, xi,
        Formula::exists(
            lv, Formula::land(Formula::atom("IsLevel", {MacroArg::v(lv), MacroArg::v(eta)}),
                              Formula::bforall(x, lv, Formula::lnot(a)))));
    FormulaPtr sigma = Formula::conj(
        {Formula::macro("Ord", {MacroArg::v(xi)}), captured, missedBelow});
    return {sigma, pi_companion(sigma, xi), print(a)};
}

Representation successor_representation(const Representation& r, const MacroRegistry& reg) {
    (void)reg;
    std::string v = rep_var(r);
    std::vector<std::string> used = all_vars(r.sigmaForm);
    for (const std::string& w : all_vars(r.piDual))
        used.push_back(w);
    std::string xi = pick("xi", used);
    std::string eta = pick("eta", used);
    FormulaPtr some = Formula::bexists(eta, xi, substitute(r.sigmaForm, v, eta));
    FormulaPtr all = Formula::bforall(
        eta, xi,
        Formula::implies(substitute(r.piDual, v, eta),
                         Formula::macro("Succ", {MacroArg::v(eta), MacroArg::v(xi)})));
    FormulaPtr sigma = Formula::land(some, all);
    return {sigma, pi_companion(sigma, xi), r.label + "+1"};
}

FormulaPtr exists_sentence(const Representation& r) {
    return Formula::exists(rep_var(r), r.sigmaForm);
}

FormulaPtr comp_sentence(const Representation& g, const Representation& d,
                         const MacroRegistry& reg) {
    (void)reg;
    FormulaPtr ex = exists_sentence(g);
    std::vector<std::string> used = all_vars(ex);
    for (const std::string& w : all_vars(d.sigmaForm))
        used.push_back(w);
    std::string xi = pick("xi", used);
    std::string lv = pick("a", used);
    std::string dv = rep_var(d);
    FormulaPtr inner = Formula::forall(
        lv, Formula::implies(Formula::atom("IsLevel", {MacroArg::v(lv), MacroArg::v(xi)}),
                             relativize(ex, lv)));
    return Formula::forall(xi, Formula::implies(substitute(d.sigmaForm, dv, xi), inner));
}

namespace {

// The unique free variable of a theory definition, its code slot.
std::string slot_of(const FormulaPtr& theoryDef) {
    std::vector<std::string> fv = free_vars_in_order(theoryDef);
    if (fv.size() != 1)
        fail(Errc::slot_arity, "theory definition must have exactly one free variable, has " +
                                   std::to_string(fv.size()));
    return fv[0];
}

} // namespace

FormulaPtr rfn_template(const FormulaPtr& theoryDef, const std::string& levelVar) {
    std::string slot = slot_of(theoryDef);
    std::vector<std::string> used = all_vars(theoryDef);
    used.push_back(levelVar);
    std::string c = pick("c", used);
    std::string s = pick("d", used);
    FormulaPtr body = Formula::implies(
        Formula::conj({Formula::atom("IsDelta0Code", {MacroArg::v(c)}),
                       Formula::atom("CodesExistsInLevel",
                                     {MacroArg::v(c), MacroArg::v(s), MacroArg::v(levelVar)}),
                       substitute(theoryDef, slot, s)}),
        Formula::atom("SatCode", {MacroArg::v(s), MacroArg::v(levelVar)}));
    return Formula::forall(c, Formula::forall(s, body));
}

FormulaPtr phiT_template(const FormulaPtr& theoryDef) {
    std::string slot = slot_of(theoryDef);
    std::vector<std::string> used = all_vars(theoryDef);
    std::string xi = pick("xi", used);
    std::string c = pick("c", used);
    FormulaPtr body =
        Formula::implies(Formula::land(Formula::atom("IsSigma1Code", {MacroArg::v(c)}),
                                       substitute(theoryDef, slot, c)),
                         Formula::atom("SatSigma1", {MacroArg::v(c), MacroArg::v(xi)}));
    return Formula::forall(c, body);
}

std::vector<HSet> satisfiers(LevelBuilder& lb, const FormulaPtr& f, const std::string& var,
                             const Level& lv, const MacroRegistry& reg) {
    std::vector<HSet> out;
    Assignment env;
    for (HSet s : lv.elements) {
        env[var] = s;
        if (model_check(lb, lv, f, env, reg))
            out.push_back(s);
    }
    return out;
}

SpectrumResult spectrum(LevelBuilder& lb, const std::vector<FormulaPtr>& sentences, int maxN,
                        const MacroRegistry& reg) {
    for (const FormulaPtr& s : sentences) {
        if (!free_vars_in_order(s).empty())
            fail(Errc::precondition, "spectrum sentences must be closed: " + print(s));
        ComplexityClass c = classify(s, reg);
        bool sigma1 = (c.kind == ComplexityClass::Kind::Sigma ||
                       c.kind == ComplexityClass::Kind::USigma) &&
                      c.n == 1;
        if (!sigma1)
            fail(Errc::classification,
                 "spectrum sentences must be Sigma-level 1, got " + c.to_string() + ": " +
                     print(s));
    }
    SpectrumResult res;
    for (const FormulaPtr& s : sentences)
        res.perSentence.emplace_back(print(s), least_witness_level(lb, s, maxN, reg));
    for (int n = 0; n <= maxN; ++n) {
        bool all = true;
        for (const FormulaPtr& s : sentences)
            if (!model_check(lb, lb.build(n), s, {}, reg)) {
                all = false;
                break;
            }
        if (all) {
            res.value = n;
            break;
        }
    }
    return res;
}

} // namespace setlab
