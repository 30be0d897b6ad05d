#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "setlab/formula.hpp"

namespace setlab {

// A named abbreviation.  Expandable macros carry a first-order expansion
// (all built-in ones are bounded, so the Sigma and Pi sides coincide);
// interpreted atoms carry no expansion and are either evaluated natively by
// an engine or are purely syntactic placeholders.  The declared levels state
// the least Sigma_n / Pi_n forms the atom is equivalent to: (0,0) bounded,
// (1,1) both Sigma_1 and Pi_1.
struct MacroDef {
    std::string name;
    std::size_t arity = 0;
    bool interpreted = false;
    int sigma_level = 0;
    int pi_level = 0;
    std::function<FormulaPtr(const std::vector<MacroArg>&)> expand; // null for interpreted atoms

    bool matrix_admissible() const { return sigma_level <= 1 && pi_level <= 1; }
};

class MacroRegistry {
public:
    void add(MacroDef def);
    bool known(const std::string& name) const { return defs_.count(name) != 0; }
    const MacroDef& lookup(const std::string& name) const;

private:
    std::map<std::string, MacroDef> defs_;
};

// Registry with the built-in vocabulary:
//   Pair(x, y, z)   z is the Kuratowski pair of x and y
//   Trans(x)        x is transitive
//   Ord(x)          x is an ordinal
//   Empty(x)        x has no elements
//   Succ(x, y)      y = x together with {x}
//   Num(x, #k)      x is the k-th von Neumann natural
//   TC(x, y)        y is the transitive closure of x            (interpreted)
//   IsLevel(a, k)   a is the constructible level with index k   (interpreted)
// plus syntactic placeholders used by sentence templates:
//   IsDelta0Code(f), IsSigma1Code(s), CodesExistsInLevel(g, f, l),
//   CodesRelativized(g, s), SatSigma1(l, f), SatCode(l, s), DiagImage(n, m)
const MacroRegistry& builtin_registry();

// Recursively replaces macro nodes by their expansions; interpreted atoms
// are left in place.  Num expansion is refused above `nat_cap`.
FormulaPtr expand_macros(const FormulaPtr& f, const MacroRegistry& reg, std::uint64_t nat_cap = 64);

// Bounded formula expressing v = the k-th von Neumann natural.
FormulaPtr vn_equals(const std::string& v, std::uint64_t k);

} // namespace setlab
