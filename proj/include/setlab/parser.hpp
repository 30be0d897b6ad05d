#pragma once

#include <string>

#include "setlab/formula.hpp"
#include "setlab/macro.hpp"

namespace setlab {

// Parses the surface syntax:
//
//   formula  :=  or ("->" formula)?
//   or       :=  and ("|" and)*
//   and      :=  unary ("&" unary)*
//   unary    :=  "~" unary | quant | primary
//   quant    :=  ("forall" | "exists") var ("in" var)? "." formula
//   primary  :=  "(" formula ")" | var ("in" | "=") var | Name "(" args ")"
//   args     :=  (var | "#" digits) ("," args)?
//
// Variables match [a-z][a-zA-Z0-9_]*; "in", "forall", "exists" are reserved.
// Macro and atom names start with an uppercase letter and must be registered
// with the expected arity.  Errors carry 1-based line:column positions.
FormulaPtr parse_formula(const std::string& text, const MacroRegistry& reg = builtin_registry());

} // namespace setlab
