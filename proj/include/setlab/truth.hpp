#pragma once
// Tarskian truth over built levels and explicit transitive domains.
//
// model_check evaluates an arbitrary formula with unbounded quantifiers
// ranging over the given domain, which must be transitive; assignment values
// must lie in the domain.  Macros with a native evaluator (Pair, Trans, Ord,
// Empty, Succ, Num, and the interpreted atoms TC and IsLevel) are decided
// directly; other macros are expanded and the interpreted atoms without an
// evaluator raise no_evaluator.
//
// sigma0_truth decides a Delta_0 formula over the transitive closure of the
// assignment's values, where Delta_0 truth is absolute.  sigma_n_truth
// decides a strict Sigma_n formula over a domain by unwinding one existential
// per step and recursing on the dual of the remainder.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setlab/formula.hpp"
#include "setlab/level.hpp"
#include "setlab/macro.hpp"

namespace setlab {

// Assignment of sets to free variables; evaluation consults only the
// variables free in the formula at hand.
using Assignment = std::map<std::string, HSet>;

bool model_check(LevelBuilder& lb, const std::vector<HSet>& domain, const FormulaPtr& f,
                 const Assignment& env = {}, const MacroRegistry& reg = builtin_registry());
bool model_check(LevelBuilder& lb, const Level& lv, const FormulaPtr& f,
                 const Assignment& env = {}, const MacroRegistry& reg = builtin_registry());

// pre: f classifies as Delta_0.
bool sigma0_truth(LevelBuilder& lb, const FormulaPtr& f, const Assignment& env = {},
                  const MacroRegistry& reg = builtin_registry());

// pre: n == 0 and f has no unbounded quantifier, or f classifies as Sigma_n.
// The domain m must be transitive.
bool sigma_n_truth(LevelBuilder& lb, int n, const FormulaPtr& f, const Assignment& env,
                   const std::vector<HSet>& m, const MacroRegistry& reg = builtin_registry());

// Least index n <= maxN whose level satisfies the sentence, if any.
std::optional<int> least_witness_level(LevelBuilder& lb, const FormulaPtr& sentence, int maxN,
                                       const MacroRegistry& reg = builtin_registry());

} // namespace setlab
