#pragma once

#include "setlab/formula.hpp"
#include "setlab/macro.hpp"

namespace setlab {

// Code of a formula: the bytes of its canonical print form read as a
// big-endian base-256 number.  Alpha-equal formulas get equal codes,
// distinct canonical forms get distinct codes, and decode inverts encode.
Nat encode(const FormulaPtr& f);
FormulaPtr decode(const Nat& code, const MacroRegistry& reg = builtin_registry());

// The decoded text without parsing; useful for diagnostics.
std::string code_to_text(const Nat& code);

} // namespace setlab
