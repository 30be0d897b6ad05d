#pragma once

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "setlab/formula.hpp"
#include "setlab/macro.hpp"

namespace setlab {

// Delta0 and the strict prenex classes Sigma(n)/Pi(n) (alternating single
// unbounded quantifiers over a bounded matrix); USigma(n)/UPi(n) are the
// closure classes reachable from those by boolean connectives and bounded
// quantification, normalizable to the strict form under enough Collection.
struct ComplexityClass {
    enum class Kind { Unclassified, Delta0, Sigma, Pi, USigma, UPi };
    Kind kind = Kind::Unclassified;
    int n = 0;

    bool strict() const { return kind == Kind::Delta0 || kind == Kind::Sigma || kind == Kind::Pi; }
    bool underlined() const { return kind == Kind::USigma || kind == Kind::UPi; }
    std::string to_string() const;
    bool operator==(const ComplexityClass&) const = default;

    static ComplexityClass delta0() { return {Kind::Delta0, 0}; }
    static ComplexityClass sigma(int n) { return {Kind::Sigma, n}; }
    static ComplexityClass pi(int n) { return {Kind::Pi, n}; }
    static ComplexityClass usigma(int n) { return {Kind::USigma, n}; }
    static ComplexityClass upi(int n) { return {Kind::UPi, n}; }
};

// Least (Sigma side, Pi side) underlined levels: atoms carry their declared
// levels, negation swaps, conjunction and disjunction take pointwise maxima,
// bounded quantifiers are transparent, and an unbounded quantifier lifts its
// own side to at least 1 and the opposite side one step above that.
std::pair<int, int> underlined_levels(const FormulaPtr& f, const MacroRegistry& reg = builtin_registry());

// Least applicable class: strict Sigma(n)/Pi(n) only for the exact prenex
// shape, Delta0 for bounded formulas over level-(0,0) atoms, otherwise the
// least underlined class (ties go to USigma).
ComplexityClass classify(const FormulaPtr& f, const MacroRegistry& reg = builtin_registry());

enum class CollapsePolarity { Existential, Universal };

// Duplicate-quantifier reduction through a Kuratowski pair: for the
// existential polarity the result is
//   exists u in fresh. exists x0 in u. exists x1 in u. Pair(x0, x1, fresh) & phi
// and the universal polarity is the dual with an implication.  phi must be
// Delta0 with x0 and x1 free; the output is Delta0 in `fresh`.
FormulaPtr pair_collapse(const FormulaPtr& phi, const std::string& x0, const std::string& x1,
                         const std::string& fresh, CollapsePolarity pol = CollapsePolarity::Existential,
                         const MacroRegistry& reg = builtin_registry());

// Negation normal form: implications unfolded, negations pushed onto atoms,
// double negations cancelled.
FormulaPtr nnf(const FormulaPtr& f);

// Prenex dual: flips every leading unbounded quantifier and negates the
// matrix (in negation normal form).  Equivalent to the negation of f.
FormulaPtr dual(const FormulaPtr& f);

// One rewrite performed by normalize.  `before` and `after` are the local
// subformulas; pure steps are logically valid in every structure, while
// premise-bearing steps (Collection promotions and pair collapses) assume
// set-existence instances that a particular finite structure may lack.
struct NormalizeStep {
    std::string rule;
    FormulaPtr before;
    FormulaPtr after;
    bool premise_bearing = false;
};

// Rewrites an underlined-class formula into strict prenex form of the same
// level: binders are freshened, the formula is put into negation normal
// form, quantifiers are pulled outward (conjunction/disjunction prefixes are
// merged left-first), and finally adjacent same-direction quantifiers are
// collapsed pairwise through Kuratowski pairs, innermost first.  A first pass
// uses only moves valid in every structure; when that cannot reach the
// computed level, bounded quantifiers are promoted across opposite
// unbounded quantifiers via Collection, which is refused when the level
// exceeds `collection_level`.  Strict and Delta0 inputs are returned
// unchanged, as are formulas with no unbounded quantifiers at all.
FormulaPtr normalize(const FormulaPtr& f, int collection_level = INT_MAX,
                     std::vector<NormalizeStep>* audit = nullptr,
                     const MacroRegistry& reg = builtin_registry());

} // namespace setlab
