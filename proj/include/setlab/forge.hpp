#pragma once
// Ordinal representations and the sentences built from them.
//
// A representation pins down a single ordinal: sigmaForm is the existential
// description of the point, piDual the universal companion
// forall y [sigmaForm(y) -> x = y].  Both are kept exactly as emitted; at
// finite levels the pair-collapsed prenex forms push their witnesses above
// the level's rank budget, so strictness is a property checked through
// normalize, not a rewrite applied to the stored formulas.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setlab/formula.hpp"
#include "setlab/truth.hpp"

namespace setlab {

struct Representation {
    FormulaPtr sigmaForm; // one free variable, the represented point
    FormulaPtr piDual;    // same free variable
    std::string label;
};

// The free variable of a representation's forms.
std::string rep_var(const Representation& r);

// Representation of the least ordinal xi such that level xi captures a
// witness of a: sigmaForm(xi) says xi is an ordinal, some x in level xi
// satisfies a, and for every eta < xi no x in level eta does.
// pre: a classifies Delta_0; x is its designated witness variable.
Representation kleene_representation(const FormulaPtr& a, const std::string& x,
                                     const MacroRegistry& reg = builtin_registry());

// Representation of the successor of r's point: some element of xi satisfies
// r.sigmaForm and every element satisfying r.piDual is xi's predecessor.
Representation successor_representation(const Representation& r,
                                        const MacroRegistry& reg = builtin_registry());

// Exists(r): the point of r exists, as a sentence.
FormulaPtr exists_sentence(const Representation& r);

// Comp(g, d): wherever d's point exists, the level it names already
// satisfies Exists(g).
FormulaPtr comp_sentence(const Representation& g, const Representation& d,
                         const MacroRegistry& reg = builtin_registry());

// Reflection schema instance over coded Delta_0 formulas: every
// theory-provable coded sentence "some x in the level named levelVar
// satisfies the coded formula" holds there.  theoryDef must have exactly one
// free variable, the code slot; it is spliced in exactly once.
FormulaPtr rfn_template(const FormulaPtr& theoryDef, const std::string& levelVar);

// The companion soundness sentence: every theory-provable coded Sigma_1
// sentence is valid at the level named by the output's free variable.
FormulaPtr phiT_template(const FormulaPtr& theoryDef);

// Elements of the level satisfying f when var names them.
std::vector<HSet> satisfiers(LevelBuilder& lb, const FormulaPtr& f, const std::string& var,
                             const Level& lv, const MacroRegistry& reg = builtin_registry());

struct SpectrumResult {
    std::optional<int> value; // least level index satisfying every sentence
    std::vector<std::pair<std::string, std::optional<int>>> perSentence;
};

// Least n <= maxN with every sentence true in level n, plus the least
// witness level of each sentence separately.
// pre: every sentence is closed and of Sigma-level 1 (strict or underlined).
SpectrumResult spectrum(LevelBuilder& lb, const std::vector<FormulaPtr>& sentences, int maxN,
                        const MacroRegistry& reg = builtin_registry());

} // namespace setlab
