#pragma once

#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "setlab/error.hpp"

namespace setlab {

using Nat = boost::multiprecision::cpp_int;

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FKind {
    Membership,    // v in w
    Equality,      // v = w
    Not,
    And,
    Or,
    Implies,
    ForAll,        // forall v. body
    Exists,        // exists v. body
    BoundedForAll, // forall v in w. body
    BoundedExists, // exists v in w. body
    Macro,         // named abbreviation with a registered expansion
    InterpretedAtom, // named atom evaluated (or merely carried) by an engine
};

// Argument of a macro or interpreted atom: a variable or a natural literal.
struct MacroArg {
    enum class Kind { Var, Nat } kind;
    std::string var; // Kind::Var
    Nat nat;         // Kind::Nat

    static MacroArg v(std::string name) { return {Kind::Var, std::move(name), 0}; }
    static MacroArg n(Nat value) { return {Kind::Nat, {}, std::move(value)}; }
    bool is_var() const { return kind == Kind::Var; }
    bool operator==(const MacroArg& o) const { return kind == o.kind && var == o.var && nat == o.nat; }
};

// Immutable relational formula over the membership language.  Atoms mention
// variables only; sets enter through macro arguments and evaluation
// assignments.
class Formula {
public:
    FKind kind;
    std::string var;  // quantified variable, or left atom variable
    std::string var2; // bound of a bounded quantifier, or right atom variable
    FormulaPtr left;
    FormulaPtr right;
    std::string name;           // Macro / InterpretedAtom
    std::vector<MacroArg> args; // Macro / InterpretedAtom

    // Sorted distinct free variables.
    const std::vector<std::string>& free_vars() const { return free_; }
    bool has_free(const std::string& v) const;
    std::size_t node_count() const { return nodes_; }

    static FormulaPtr mem(std::string v, std::string w);
    static FormulaPtr eq(std::string v, std::string w);
    static FormulaPtr lnot(FormulaPtr f);
    static FormulaPtr land(FormulaPtr a, FormulaPtr b);
    static FormulaPtr lor(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr forall(std::string v, FormulaPtr body);
    static FormulaPtr exists(std::string v, FormulaPtr body);
    static FormulaPtr bforall(std::string v, std::string bound, FormulaPtr body);
    static FormulaPtr bexists(std::string v, std::string bound, FormulaPtr body);
    static FormulaPtr macro(std::string name, std::vector<MacroArg> args);
    static FormulaPtr atom(std::string name, std::vector<MacroArg> args);

    // Conjunction/disjunction of a non-empty list, folded to the right.
    static FormulaPtr conj(std::vector<FormulaPtr> fs);
    static FormulaPtr disj(std::vector<FormulaPtr> fs);

private:
    std::vector<std::string> free_;
    std::size_t nodes_ = 1;
    friend FormulaPtr finish(std::shared_ptr<Formula> f);
};

bool is_atom(const Formula& f);
bool is_quantifier(FKind k);

// Deterministic print form; parse(print(f)) is alpha-equal to f.
std::string print(const FormulaPtr& f);
// Print form with every bound variable renamed to a canonical name; equal
// strings exactly for alpha-equal formulas.
std::string canonical_print(const FormulaPtr& f);
FormulaPtr alpha_canonical(const FormulaPtr& f);
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Capture-avoiding substitution of variable v by variable w.
FormulaPtr substitute(const FormulaPtr& f, const std::string& v, const std::string& w);

// Rename every binder so that no bound variable shadows another or clashes
// with a free variable; fresh names are drawn from u0, u1, ...
FormulaPtr freshen_binders(const FormulaPtr& f);

// First name of the form u0, u1, ... not contained in `used`.
std::string fresh_var(const std::vector<std::string>& used);

// Every variable name occurring in f, free or bound, sorted.
std::vector<std::string> all_vars(const FormulaPtr& f);

// Relativization: every unbounded quantifier becomes bounded by `bound`.
// `bound` occurring as a binder is renamed when `rename` is set, otherwise a
// capture error is raised; `bound` occurring free next to an unbounded
// quantifier is always a capture error.
FormulaPtr relativize(const FormulaPtr& f, const std::string& bound, bool rename = true);

// Variables of f in order of first free occurrence (preorder).
std::vector<std::string> free_vars_in_order(const FormulaPtr& f);

} // namespace setlab
