#include "setlab/truth.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "setlab/complexity.hpp"

namespace setlab {

namespace {

bool has_unbounded(const FormulaPtr& f) {
    if (!f)
        return false;
    if (f->kind == FKind::ForAll || f->kind == FKind::Exists)
        return true;
    return has_unbounded(f->left) || has_unbounded(f->right);
}

struct Checker {
    LevelBuilder& lb;
    const MacroRegistry& reg;
    const std::vector<HSet>& dom;
    std::unordered_set<HSet, HSetHash> domSet;
    std::unordered_map<std::string, bool> memo;
    std::unordered_map<const Formula*, FormulaPtr> expanded;

    Checker(LevelBuilder& b, const MacroRegistry& r, const std::vector<HSet>& d)
        : lb(b), reg(r), dom(d) {
        for (HSet s : dom)
            domSet.insert(s);
        for (HSet s : dom)
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!domSet.count(s.at(i)))
                    fail(Errc::non_transitive_domain, "domain omits " + s.at(i).to_string() +
                                                          ", an element of " + s.to_string());
    }

    HSet value(const std::string& v, const Assignment& env) {
        auto it = env.find(v);
        if (it == env.end())
            fail(Errc::unbound_variable, "variable '" + v + "' is unbound");
        return it->second;
    }

    HSet set_arg(const MacroArg& a, const Assignment& env) {
        if (a.kind != MacroArg::Kind::Var)
            fail(Errc::precondition, "expected a set argument, got a numeral");
        return value(a.var, env);
    }

    // Decides the builtin vocabulary directly; nullopt for names without a
    // native decision procedure.
    std::optional<bool> native(const Formula& f, const Assignment& env) {
        SetArena& ar = lb.arena();
        const std::string& n = f.name;
        if (n == "Pair")
            return set_arg(f.args[2], env) ==
                   ar.kpair(set_arg(f.args[0], env), set_arg(f.args[1], env));
        if (n == "Trans")
            return set_arg(f.args[0], env).is_transitive_set();
        if (n == "Ord")
            return set_arg(f.args[0], env).is_ordinal();
        if (n == "Empty")
            return set_arg(f.args[0], env).is_empty();
        if (n == "Succ") {
            HSet x = set_arg(f.args[0], env);
            return set_arg(f.args[1], env) == ar.with_element(x, x);
        }
        if (n == "Num") {
            if (f.args[1].kind != MacroArg::Kind::Nat)
                fail(Errc::precondition, "Num needs a numeral second argument");
            auto nv = set_arg(f.args[0], env).nat_value();
            return nv && Nat(*nv) == f.args[1].nat;
        }
        if (n == "TC")
            return set_arg(f.args[1], env) == ar.transitive_closure(set_arg(f.args[0], env));
        if (n == "IsLevel") {
            HSet a = set_arg(f.args[0], env);
            HSet xi = set_arg(f.args[1], env);
            auto k = xi.nat_value();
            if (!k)
                return false;
            if (*k <= LevelBuilder::kMaxIndex)
                return a == lb.level_set(static_cast<int>(*k));
            if (a.rank() != *k)
                return false;
            fail(Errc::resource_limit,
                 "level identity at index " + std::to_string(*k) + " exceeds the built range");
        }
        return std::nullopt;
    }

    bool eval(const FormulaPtr& f, const Assignment& env) {
        std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(f.get()));
        for (const std::string& v : free_vars_in_order(f)) {
            key += '|';
            key += v;
            key += '=';
            key += std::to_string(reinterpret_cast<std::uintptr_t>(value(v, env).raw()));
        }
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        bool r = eval_raw(*f, env);
        memo.emplace(std::move(key), r);
        return r;
    }

    bool eval_raw(const Formula& f, const Assignment& env) {
        switch (f.kind) {
        case FKind::Membership:
            return value(f.var2, env).contains(value(f.var, env));
        case FKind::Equality:
            return value(f.var, env) == value(f.var2, env);
        case FKind::Not:
            return !eval(f.left, env);
        case FKind::And:
            return eval(f.left, env) && eval(f.right, env);
        case FKind::Or:
            return eval(f.left, env) || eval(f.right, env);
        case FKind::Implies:
            return !eval(f.left, env) || eval(f.right, env);
        case FKind::ForAll:
        case FKind::Exists: {
            bool univ = f.kind == FKind::ForAll;
            Assignment e2 = env;
            for (HSet w : dom) {
                e2[f.var] = w;
                if (eval(f.left, e2) != univ)
                    return !univ;
            }
            return univ;
        }
        case FKind::BoundedForAll:
        case FKind::BoundedExists: {
            bool univ = f.kind == FKind::BoundedForAll;
            HSet bound = value(f.var2, env);
            Assignment e2 = env;
            for (std::size_t i = 0; i < bound.size(); ++i) {
                e2[f.var] = bound.at(i);
                if (eval(f.left, e2) != univ)
                    return !univ;
            }
            return univ;
        }
        case FKind::Macro:
        case FKind::InterpretedAtom: {
            if (auto r = native(f, env))
                return *r;
            if (f.kind == FKind::InterpretedAtom)
                fail(Errc::no_evaluator, "no evaluator for interpreted atom " + f.name);
            auto [it, fresh] = expanded.try_emplace(&f, nullptr);
            if (fresh) {
                auto node = std::make_shared<Formula>(f);
                it->second = expand_macros(node, reg);
            }
            return eval(it->second, env);
        }
        default:
            fail(Errc::precondition, "malformed formula node");
        }
    }
};

} // namespace

bool model_check(LevelBuilder& lb, const std::vector<HSet>& domain, const FormulaPtr& f,
                 const Assignment& env, const MacroRegistry& reg) {
    Checker ck(lb, reg, domain);
    for (const std::string& v : free_vars_in_order(f)) {
        HSet val = ck.value(v, env);
        if (!ck.domSet.count(val))
            fail(Errc::not_in_level, "assignment sends '" + v + "' to " + val.to_string() +
                                         ", outside the domain");
    }
    return ck.eval(f, env);
}

bool model_check(LevelBuilder& lb, const Level& lv, const FormulaPtr& f, const Assignment& env,
                 const MacroRegistry& reg) {
    return model_check(lb, lv.elements, f, env, reg);
}

namespace {

// Transitive closure of the assignment's values over the formula's free
// variables; the natural domain for Delta_0 evaluation.
std::vector<HSet> env_closure(LevelBuilder& lb, const FormulaPtr& f, const Assignment& env) {
    std::vector<HSet> dom;
    std::unordered_set<HSet, HSetHash> seen;
    auto add = [&](HSet s) {
        if (seen.insert(s).second)
            dom.push_back(s);
    };
    for (const std::string& v : free_vars_in_order(f)) {
        auto it = env.find(v);
        if (it == env.end())
            fail(Errc::unbound_variable, "variable '" + v + "' is unbound");
        add(it->second);
        HSet tc = lb.arena().transitive_closure(it->second);
        for (std::size_t i = 0; i < tc.size(); ++i)
            add(tc.at(i));
    }
    return dom;
}

} // namespace

bool sigma0_truth(LevelBuilder& lb, const FormulaPtr& f, const Assignment& env,
                  const MacroRegistry& reg) {
    ComplexityClass c = classify(f, reg);
    if (!(c == ComplexityClass::delta0()))
        fail(Errc::classification, "sigma0_truth needs a Delta_0 formula, got " + c.to_string());
    return model_check(lb, env_closure(lb, f, env), f, env, reg);
}

bool sigma_n_truth(LevelBuilder& lb, int n, const FormulaPtr& f, const Assignment& env,
                   const std::vector<HSet>& m, const MacroRegistry& reg) {
    if (n < 0)
        fail(Errc::precondition, "negative quantifier count");
    if (n == 0) {
        // Bounded formulas over classified atoms are still absolute; the
        // Delta_0 front door is sigma0_truth itself.
        if (has_unbounded(f))
            fail(Errc::classification, "sigma_0 stage reached with an unbounded quantifier");
        return model_check(lb, env_closure(lb, f, env), f, env, reg);
    }
    ComplexityClass c = classify(f, reg);
    if (!(c == ComplexityClass::sigma(n)))
        fail(Errc::classification, "expected a strict Sigma_" + std::to_string(n) +
                                       " formula, got " + c.to_string());
    FormulaPtr rest = dual(f->left);
    Assignment e2 = env;
    for (HSet w : m) {
        e2[f->var] = w;
        if (!sigma_n_truth(lb, n - 1, rest, e2, m, reg))
            return true;
    }
    return false;
}

std::optional<int> least_witness_level(LevelBuilder& lb, const FormulaPtr& sentence, int maxN,
                                       const MacroRegistry& reg) {
    for (int n = 0; n <= maxN; ++n)
        if (model_check(lb, lb.build(n), sentence, {}, reg))
            return n;
    return std::nullopt;
}

} // namespace setlab
