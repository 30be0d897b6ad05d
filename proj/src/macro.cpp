#include "setlab/macro.hpp"

#include <algorithm>

namespace setlab {

void MacroRegistry::add(MacroDef def) { defs_[def.name] = std::move(def); }

const MacroDef& MacroRegistry::lookup(const std::string& name) const {
    auto it = defs_.find(name);
    if (it == defs_.end())
        fail(Errc::syntax, "unknown macro or atom '" + name + "'");
    return it->second;
}

namespace {

using F = Formula;

std::string need_var(const std::vector<MacroArg>& args, std::size_t i, const std::string& name) {
    if (args[i].kind != MacroArg::Kind::Var)
        fail(Errc::precondition, name + ": argument " + std::to_string(i + 1) + " must be a variable");
    return args[i].var;
}

// Fresh names for expansion binders, avoiding the argument variables.
struct Names {
    std::vector<std::string> used;
    explicit Names(const std::vector<MacroArg>& args) {
        for (const MacroArg& a : args)
            if (a.is_var())
                used.push_back(a.var);
    }
    std::string next() {
        std::string v = fresh_var(used);
        used.push_back(v);
        return v;
    }
};

FormulaPtr trans_body(const std::string& x, Names& nm) {
    std::string y = nm.next(), z = nm.next();
    return F::bforall(y, x, F::bforall(z, y, F::mem(z, x)));
}

FormulaPtr expand_trans(const std::vector<MacroArg>& args) {
    Names nm(args);
    return trans_body(need_var(args, 0, "Trans"), nm);
}

FormulaPtr expand_ord(const std::vector<MacroArg>& args) {
    Names nm(args);
    std::string x = need_var(args, 0, "Ord");
    std::string y = nm.next();
    return F::land(trans_body(x, nm), F::bforall(y, x, trans_body(y, nm)));
}

FormulaPtr empty_body(const std::string& x, Names& nm) {
    std::string w = nm.next();
    return F::bforall(w, x, F::lnot(F::eq(w, w)));
}

FormulaPtr expand_empty(const std::vector<MacroArg>& args) {
    Names nm(args);
    return empty_body(need_var(args, 0, "Empty"), nm);
}

// w = {x}
FormulaPtr is_singleton_of(const std::string& w, const std::string& x, Names& nm) {
    std::string u = nm.next();
    return F::land(F::mem(x, w), F::bforall(u, w, F::eq(u, x)));
}

// w = {x, y}
FormulaPtr is_doubleton_of(const std::string& w, const std::string& x, const std::string& y, Names& nm) {
    std::string u = nm.next();
    return F::land(F::land(F::mem(x, w), F::mem(y, w)),
                   F::bforall(u, w, F::lor(F::eq(u, x), F::eq(u, y))));
}

FormulaPtr expand_pair(const std::vector<MacroArg>& args) {
    Names nm(args);
    std::string x = need_var(args, 0, "Pair");
    std::string y = need_var(args, 1, "Pair");
    std::string z = need_var(args, 2, "Pair");
    std::string w1 = nm.next(), w2 = nm.next(), w3 = nm.next();
    return F::conj({F::bexists(w1, z, is_singleton_of(w1, x, nm)),
                    F::bexists(w2, z, is_doubleton_of(w2, x, y, nm)),
                    F::bforall(w3, z, F::lor(is_singleton_of(w3, x, nm), is_doubleton_of(w3, x, y, nm)))});
}

FormulaPtr expand_succ(const std::vector<MacroArg>& args) {
    Names nm(args);
    std::string x = need_var(args, 0, "Succ");
    std::string y = need_var(args, 1, "Succ");
    std::string w1 = nm.next(), w2 = nm.next();
    return F::conj({F::mem(x, y), F::bforall(w1, x, F::mem(w1, y)),
                    F::bforall(w2, y, F::lor(F::mem(w2, x), F::eq(w2, x)))});
}

// Descending chain of length k into v: exists x_{k-1} in v ... exists x_0 in
// x_1 (x_0 = x_0).  For an ordinal v this says v >= k, in linear size.
FormulaPtr chain_into(const std::string& v, std::uint64_t k, Names& nm) {
    if (k == 0)
        return F::eq(v, v);
    std::string x = nm.next();
    return F::bexists(x, v, chain_into(x, k - 1, nm));
}

FormulaPtr vn_equals_impl(const std::string& v, std::uint64_t k) {
    std::vector<MacroArg> args{MacroArg::v(v)};
    Names nm(args);
    std::string y = nm.next();
    FormulaPtr ord = F::land(trans_body(v, nm), F::bforall(y, v, trans_body(y, nm)));
    return F::conj({std::move(ord), chain_into(v, k, nm), F::lnot(chain_into(v, k + 1, nm))});
}

constexpr std::uint64_t kDefaultNatCap = 64;

FormulaPtr expand_num(const std::vector<MacroArg>& args) {
    std::string v = need_var(args, 0, "Num");
    if (args[1].kind != MacroArg::Kind::Nat)
        fail(Errc::precondition, "Num: argument 2 must be a natural literal");
    if (args[1].nat > kDefaultNatCap)
        fail(Errc::resource_limit, "Num: literal too large to expand");
    return vn_equals_impl(v, args[1].nat.convert_to<std::uint64_t>());
}

MacroRegistry make_builtins() {
    MacroRegistry reg;
    reg.add({"Pair", 3, false, 0, 0, expand_pair});
    reg.add({"Trans", 1, false, 0, 0, expand_trans});
    reg.add({"Ord", 1, false, 0, 0, expand_ord});
    reg.add({"Empty", 1, false, 0, 0, expand_empty});
    reg.add({"Succ", 2, false, 0, 0, expand_succ});
    reg.add({"Num", 2, false, 0, 0, expand_num});
    reg.add({"TC", 2, true, 1, 1, nullptr});
    reg.add({"IsLevel", 2, true, 1, 1, nullptr});
    // Template placeholders; never evaluated.
    reg.add({"IsDelta0Code", 1, true, 1, 1, nullptr});
    reg.add({"IsSigma1Code", 1, true, 1, 1, nullptr});
    reg.add({"CodesExistsInLevel", 3, true, 1, 1, nullptr});
    reg.add({"CodesRelativized", 2, true, 1, 1, nullptr});
    reg.add({"SatSigma1", 2, true, 1, 2, nullptr});
    reg.add({"SatCode", 2, true, 1, 2, nullptr});
    reg.add({"DiagImage", 2, true, 0, 0, nullptr});
    return reg;
}

} // namespace

const MacroRegistry& builtin_registry() {
    static const MacroRegistry reg = make_builtins();
    return reg;
}

FormulaPtr vn_equals(const std::string& v, std::uint64_t k) { return vn_equals_impl(v, k); }

FormulaPtr expand_macros(const FormulaPtr& f, const MacroRegistry& reg, std::uint64_t nat_cap) {
    switch (f->kind) {
    case FKind::Membership:
    case FKind::Equality:
    case FKind::InterpretedAtom:
        return f;
    case FKind::Not:
        return Formula::lnot(expand_macros(f->left, reg, nat_cap));
    case FKind::And:
        return Formula::land(expand_macros(f->left, reg, nat_cap), expand_macros(f->right, reg, nat_cap));
    case FKind::Or:
        return Formula::lor(expand_macros(f->left, reg, nat_cap), expand_macros(f->right, reg, nat_cap));
    case FKind::Implies:
        return Formula::implies(expand_macros(f->left, reg, nat_cap), expand_macros(f->right, reg, nat_cap));
    case FKind::ForAll:
        return Formula::forall(f->var, expand_macros(f->left, reg, nat_cap));
    case FKind::Exists:
        return Formula::exists(f->var, expand_macros(f->left, reg, nat_cap));
    case FKind::BoundedForAll:
        return Formula::bforall(f->var, f->var2, expand_macros(f->left, reg, nat_cap));
    case FKind::BoundedExists:
        return Formula::bexists(f->var, f->var2, expand_macros(f->left, reg, nat_cap));
    case FKind::Macro: {
        const MacroDef& def = reg.lookup(f->name);
        if (!def.expand)
            fail(Errc::precondition, "'" + f->name + "' has no expansion");
        if (f->args.size() != def.arity)
            fail(Errc::precondition, "'" + f->name + "' expects " + std::to_string(def.arity) + " arguments");
        if (f->name == "Num" && f->args[1].kind == MacroArg::Kind::Nat && f->args[1].nat > nat_cap)
            fail(Errc::resource_limit, "Num: literal exceeds expansion cap");
        return def.expand(f->args);
    }
    }
    fail(Errc::precondition, "unreachable formula kind");
}

} // namespace setlab
