#include "setlab/formula.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace setlab {

namespace {

void merge_sorted(std::vector<std::string>& into, const std::vector<std::string>& from) {
    std::vector<std::string> out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
}

void erase_var(std::vector<std::string>& vs, const std::string& v) {
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    if (it != vs.end() && *it == v)
        vs.erase(it);
}

void insert_var(std::vector<std::string>& vs, const std::string& v) {
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    if (it == vs.end() || *it != v)
        vs.insert(it, v);
}

} // namespace

FormulaPtr finish(std::shared_ptr<Formula> f) {
    Formula& n = *f;
    n.nodes_ = 1;
    switch (n.kind) {
    case FKind::Membership:
    case FKind::Equality:
        insert_var(n.free_, n.var);
        insert_var(n.free_, n.var2);
        break;
    case FKind::Not:
        n.free_ = n.left->free_;
        n.nodes_ += n.left->nodes_;
        break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
        n.free_ = n.left->free_;
        merge_sorted(n.free_, n.right->free_);
        n.nodes_ += n.left->nodes_ + n.right->nodes_;
        break;
    case FKind::ForAll:
    case FKind::Exists:
        n.free_ = n.left->free_;
        erase_var(n.free_, n.var);
        n.nodes_ += n.left->nodes_;
        break;
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        n.free_ = n.left->free_;
        erase_var(n.free_, n.var);
        insert_var(n.free_, n.var2);
        n.nodes_ += n.left->nodes_;
        break;
    case FKind::Macro:
    case FKind::InterpretedAtom:
        for (const MacroArg& a : n.args)
            if (a.is_var())
                insert_var(n.free_, a.var);
        break;
    }
    return f;
}

bool Formula::has_free(const std::string& v) const {
    return std::binary_search(free_.begin(), free_.end(), v);
}

FormulaPtr Formula::mem(std::string v, std::string w) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Membership;
    f->var = std::move(v);
    f->var2 = std::move(w);
    return finish(f);
}

FormulaPtr Formula::eq(std::string v, std::string w) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Equality;
    f->var = std::move(v);
    f->var2 = std::move(w);
    return finish(f);
}

FormulaPtr Formula::lnot(FormulaPtr x) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Not;
    f->left = std::move(x);
    return finish(f);
}

static FormulaPtr binary(FKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(a);
    f->right = std::move(b);
    return finish(f);
}

FormulaPtr Formula::land(FormulaPtr a, FormulaPtr b) { return binary(FKind::And, std::move(a), std::move(b)); }
FormulaPtr Formula::lor(FormulaPtr a, FormulaPtr b) { return binary(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) { return binary(FKind::Implies, std::move(a), std::move(b)); }

static FormulaPtr quant(FKind k, std::string v, std::string bound, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(v);
    f->var2 = std::move(bound);
    f->left = std::move(body);
    return finish(f);
}

FormulaPtr Formula::forall(std::string v, FormulaPtr body) { return quant(FKind::ForAll, std::move(v), {}, std::move(body)); }
FormulaPtr Formula::exists(std::string v, FormulaPtr body) { return quant(FKind::Exists, std::move(v), {}, std::move(body)); }
FormulaPtr Formula::bforall(std::string v, std::string bound, FormulaPtr body) {
    return quant(FKind::BoundedForAll, std::move(v), std::move(bound), std::move(body));
}
FormulaPtr Formula::bexists(std::string v, std::string bound, FormulaPtr body) {
    return quant(FKind::BoundedExists, std::move(v), std::move(bound), std::move(body));
}

FormulaPtr Formula::macro(std::string name, std::vector<MacroArg> args) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::Macro;
    f->name = std::move(name);
    f->args = std::move(args);
    return finish(f);
}

FormulaPtr Formula::atom(std::string name, std::vector<MacroArg> args) {
    auto f = std::make_shared<Formula>();
    f->kind = FKind::InterpretedAtom;
    f->name = std::move(name);
    f->args = std::move(args);
    return finish(f);
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) {
    assert(!fs.empty());
    FormulaPtr out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;)
        out = land(fs[i], out);
    return out;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) {
    assert(!fs.empty());
    FormulaPtr out = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;)
        out = lor(fs[i], out);
    return out;
}

bool is_atom(const Formula& f) {
    return f.kind == FKind::Membership || f.kind == FKind::Equality || f.kind == FKind::Macro ||
           f.kind == FKind::InterpretedAtom;
}

bool is_quantifier(FKind k) {
    return k == FKind::ForAll || k == FKind::Exists || k == FKind::BoundedForAll || k == FKind::BoundedExists;
}

// ---- printing ----------------------------------------------------------

namespace {

// Precedence: -> 1 (right assoc), | 2, & 3, ~ 4, atoms 5.  Quantifier bodies
// extend to the right, so a quantifier is precedence 0 and gets parenthesized
// as the operand of anything.
void print_rec(const Formula& f, int parent, std::string& out) {
    auto wrap = [&](int mine, auto&& body) {
        bool paren = mine < parent;
        if (paren)
            out += "(";
        body();
        if (paren)
            out += ")";
    };
    switch (f.kind) {
    case FKind::Membership:
        out += f.var + " in " + f.var2;
        break;
    case FKind::Equality:
        out += f.var + " = " + f.var2;
        break;
    case FKind::Not:
        out += "~(";
        print_rec(*f.left, 0, out);
        out += ")";
        break;
    case FKind::And:
        wrap(3, [&] {
            print_rec(*f.left, 3, out);
            out += " & ";
            print_rec(*f.right, 4, out);
        });
        break;
    case FKind::Or:
        wrap(2, [&] {
            print_rec(*f.left, 2, out);
            out += " | ";
            print_rec(*f.right, 3, out);
        });
        break;
    case FKind::Implies:
        wrap(1, [&] {
            print_rec(*f.left, 2, out);
            out += " -> ";
            print_rec(*f.right, 1, out);
        });
        break;
    case FKind::ForAll:
    case FKind::BoundedForAll:
    case FKind::Exists:
    case FKind::BoundedExists:
        wrap(0, [&] {
            out += (f.kind == FKind::ForAll || f.kind == FKind::BoundedForAll) ? "forall " : "exists ";
            out += f.var;
            if (f.kind == FKind::BoundedForAll || f.kind == FKind::BoundedExists)
                out += " in " + f.var2;
            out += ". ";
            print_rec(*f.left, 0, out);
        });
        break;
    case FKind::Macro:
    case FKind::InterpretedAtom:
        out += f.name + "(";
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i)
                out += ", ";
            const MacroArg& a = f.args[i];
            out += a.is_var() ? a.var : "#" + a.nat.str();
        }
        out += ")";
        break;
    }
}

} // namespace

std::string print(const FormulaPtr& f) {
    std::string out;
    print_rec(*f, 0, out);
    return out;
}

// ---- alpha canonicalization --------------------------------------------

namespace {

struct Canonicalizer {
    const std::vector<std::string>& avoid; // free variables of the whole formula
    int next = 0;

    std::string fresh_bound() {
        for (;;) {
            std::string name = "x" + std::to_string(next++);
            if (!std::binary_search(avoid.begin(), avoid.end(), name))
                return name;
        }
    }

    FormulaPtr walk(const Formula& f, std::map<std::string, std::string>& ren) {
        auto lookup = [&](const std::string& v) {
            auto it = ren.find(v);
            return it == ren.end() ? v : it->second;
        };
        switch (f.kind) {
        case FKind::Membership:
            return Formula::mem(lookup(f.var), lookup(f.var2));
        case FKind::Equality:
            return Formula::eq(lookup(f.var), lookup(f.var2));
        case FKind::Not:
            return Formula::lnot(walk(*f.left, ren));
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: {
            FormulaPtr l = walk(*f.left, ren);
            FormulaPtr r = walk(*f.right, ren);
            if (f.kind == FKind::And)
                return Formula::land(l, r);
            if (f.kind == FKind::Or)
                return Formula::lor(l, r);
            return Formula::implies(l, r);
        }
        case FKind::ForAll:
        case FKind::Exists:
        case FKind::BoundedForAll:
        case FKind::BoundedExists: {
            std::string bound = (f.kind == FKind::BoundedForAll || f.kind == FKind::BoundedExists)
                                    ? lookup(f.var2)
                                    : std::string{};
            std::string name = fresh_bound();
            auto saved = ren.find(f.var);
            std::string old;
            bool had = saved != ren.end();
            if (had)
                old = saved->second;
            ren[f.var] = name;
            FormulaPtr body = walk(*f.left, ren);
            if (had)
                ren[f.var] = old;
            else
                ren.erase(f.var);
            switch (f.kind) {
            case FKind::ForAll: return Formula::forall(name, body);
            case FKind::Exists: return Formula::exists(name, body);
            case FKind::BoundedForAll: return Formula::bforall(name, bound, body);
            default: return Formula::bexists(name, bound, body);
            }
        }
        case FKind::Macro:
        case FKind::InterpretedAtom: {
            std::vector<MacroArg> args = f.args;
            for (MacroArg& a : args)
                if (a.is_var())
                    a.var = lookup(a.var);
            return f.kind == FKind::Macro ? Formula::macro(f.name, std::move(args))
                                          : Formula::atom(f.name, std::move(args));
        }
        }
        fail(Errc::precondition, "unreachable formula kind");
    }
};

} // namespace

FormulaPtr alpha_canonical(const FormulaPtr& f) {
    Canonicalizer c{f->free_vars()};
    std::map<std::string, std::string> ren;
    return c.walk(*f, ren);
}

std::string canonical_print(const FormulaPtr& f) { return print(alpha_canonical(f)); }

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    return canonical_print(a) == canonical_print(b);
}

// ---- substitution and renaming -----------------------------------------

std::string fresh_var(const std::vector<std::string>& used) {
    std::set<std::string> taken(used.begin(), used.end());
    for (int i = 0;; ++i) {
        std::string name = "u" + std::to_string(i);
        if (!taken.count(name))
            return name;
    }
}

namespace {

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
    switch (f.kind) {
    case FKind::Membership:
    case FKind::Equality:
        out.insert(f.var);
        out.insert(f.var2);
        return;
    case FKind::Not:
        collect_all_vars(*f.left, out);
        return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
        collect_all_vars(*f.left, out);
        collect_all_vars(*f.right, out);
        return;
    case FKind::ForAll:
    case FKind::Exists:
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        out.insert(f.var);
        if (!f.var2.empty())
            out.insert(f.var2);
        collect_all_vars(*f.left, out);
        return;
    case FKind::Macro:
    case FKind::InterpretedAtom:
        for (const MacroArg& a : f.args)
            if (a.is_var())
                out.insert(a.var);
        return;
    }
}

FormulaPtr subst_rec(const FormulaPtr& f, const std::string& v, const std::string& w, std::set<std::string>& avoid) {
    if (!f->has_free(v))
        return f;
    switch (f->kind) {
    case FKind::Membership:
    case FKind::Equality: {
        std::string a = f->var == v ? w : f->var;
        std::string b = f->var2 == v ? w : f->var2;
        return f->kind == FKind::Membership ? Formula::mem(a, b) : Formula::eq(a, b);
    }
    case FKind::Not:
        return Formula::lnot(subst_rec(f->left, v, w, avoid));
    case FKind::And:
        return Formula::land(subst_rec(f->left, v, w, avoid), subst_rec(f->right, v, w, avoid));
    case FKind::Or:
        return Formula::lor(subst_rec(f->left, v, w, avoid), subst_rec(f->right, v, w, avoid));
    case FKind::Implies:
        return Formula::implies(subst_rec(f->left, v, w, avoid), subst_rec(f->right, v, w, avoid));
    case FKind::ForAll:
    case FKind::Exists:
    case FKind::BoundedForAll:
    case FKind::BoundedExists: {
        std::string bound = f->var2.empty() ? std::string{} : (f->var2 == v ? w : f->var2);
        std::string binder = f->var;
        FormulaPtr body = f->left;
        if (binder == v) {
            // v occurs free only through the bound; binder untouched.
        } else if (binder == w) {
            // Capture: rename the binder first.
            std::vector<std::string> used(avoid.begin(), avoid.end());
            std::string nb = fresh_var(used);
            avoid.insert(nb);
            body = subst_rec(body, binder, nb, avoid);
            binder = nb;
            body = subst_rec(body, v, w, avoid);
        } else {
            body = subst_rec(body, v, w, avoid);
        }
        switch (f->kind) {
        case FKind::ForAll: return Formula::forall(binder, body);
        case FKind::Exists: return Formula::exists(binder, body);
        case FKind::BoundedForAll: return Formula::bforall(binder, bound, body);
        default: return Formula::bexists(binder, bound, body);
        }
    }
    case FKind::Macro:
    case FKind::InterpretedAtom: {
        std::vector<MacroArg> args = f->args;
        for (MacroArg& a : args)
            if (a.is_var() && a.var == v)
                a.var = w;
        return f->kind == FKind::Macro ? Formula::macro(f->name, std::move(args))
                                       : Formula::atom(f->name, std::move(args));
    }
    }
    fail(Errc::precondition, "unreachable formula kind");
}

} // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& v, const std::string& w) {
    if (v == w)
        return f;
    std::set<std::string> avoid;
    collect_all_vars(*f, avoid);
    avoid.insert(w);
    return subst_rec(f, v, w, avoid);
}

namespace {

FormulaPtr freshen_rec(const FormulaPtr& f, std::map<std::string, std::string>& ren, std::set<std::string>& used,
                       int& next) {
    auto lookup = [&](const std::string& v) {
        auto it = ren.find(v);
        return it == ren.end() ? v : it->second;
    };
    switch (f->kind) {
    case FKind::Membership:
        return Formula::mem(lookup(f->var), lookup(f->var2));
    case FKind::Equality:
        return Formula::eq(lookup(f->var), lookup(f->var2));
    case FKind::Not:
        return Formula::lnot(freshen_rec(f->left, ren, used, next));
    case FKind::And:
        return Formula::land(freshen_rec(f->left, ren, used, next), freshen_rec(f->right, ren, used, next));
    case FKind::Or:
        return Formula::lor(freshen_rec(f->left, ren, used, next), freshen_rec(f->right, ren, used, next));
    case FKind::Implies:
        return Formula::implies(freshen_rec(f->left, ren, used, next), freshen_rec(f->right, ren, used, next));
    case FKind::ForAll:
    case FKind::Exists:
    case FKind::BoundedForAll:
    case FKind::BoundedExists: {
        std::string bound = f->var2.empty() ? std::string{} : lookup(f->var2);
        std::string name;
        do {
            name = "u" + std::to_string(next++);
        } while (used.count(name));
        used.insert(name);
        auto it = ren.find(f->var);
        bool had = it != ren.end();
        std::string old = had ? it->second : std::string{};
        ren[f->var] = name;
        FormulaPtr body = freshen_rec(f->left, ren, used, next);
        if (had)
            ren[f->var] = old;
        else
            ren.erase(f->var);
        switch (f->kind) {
        case FKind::ForAll: return Formula::forall(name, body);
        case FKind::Exists: return Formula::exists(name, body);
        case FKind::BoundedForAll: return Formula::bforall(name, bound, body);
        default: return Formula::bexists(name, bound, body);
        }
    }
    case FKind::Macro:
    case FKind::InterpretedAtom: {
        std::vector<MacroArg> args = f->args;
        for (MacroArg& a : args)
            if (a.is_var())
                a.var = lookup(a.var);
        return f->kind == FKind::Macro ? Formula::macro(f->name, std::move(args))
                                       : Formula::atom(f->name, std::move(args));
    }
    }
    fail(Errc::precondition, "unreachable formula kind");
}

} // namespace

FormulaPtr freshen_binders(const FormulaPtr& f) {
    std::set<std::string> used;
    collect_all_vars(*f, used);
    std::map<std::string, std::string> ren;
    int next = 0;
    return freshen_rec(f, ren, used, next);
}

std::vector<std::string> all_vars(const FormulaPtr& f) {
    std::set<std::string> vars;
    collect_all_vars(*f, vars);
    return {vars.begin(), vars.end()};
}

FormulaPtr relativize(const FormulaPtr& f, const std::string& bound, bool rename) {
    FormulaPtr g = f;
    std::set<std::string> all;
    collect_all_vars(*g, all);
    bool binder_clash = all.count(bound) && !g->has_free(bound);
    if (binder_clash) {
        if (!rename)
            fail(Errc::capture, "relativization bound '" + bound + "' occurs as a binder");
        g = freshen_binders(g);
    }
    struct Walker {
        const std::string& z;
        FormulaPtr walk(const FormulaPtr& f) {
            switch (f->kind) {
            case FKind::Membership:
            case FKind::Equality:
            case FKind::Macro:
            case FKind::InterpretedAtom:
                return f;
            case FKind::Not:
                return Formula::lnot(walk(f->left));
            case FKind::And:
                return Formula::land(walk(f->left), walk(f->right));
            case FKind::Or:
                return Formula::lor(walk(f->left), walk(f->right));
            case FKind::Implies:
                return Formula::implies(walk(f->left), walk(f->right));
            case FKind::ForAll:
                if (f->left->has_free(z) || f->var == z)
                    fail(Errc::capture, "relativization bound occurs under an unbounded quantifier");
                return Formula::bforall(f->var, z, walk(f->left));
            case FKind::Exists:
                if (f->left->has_free(z) || f->var == z)
                    fail(Errc::capture, "relativization bound occurs under an unbounded quantifier");
                return Formula::bexists(f->var, z, walk(f->left));
            case FKind::BoundedForAll:
                return Formula::bforall(f->var, f->var2, walk(f->left));
            case FKind::BoundedExists:
                return Formula::bexists(f->var, f->var2, walk(f->left));
            }
            fail(Errc::precondition, "unreachable formula kind");
        }
    } w{bound};
    return w.walk(g);
}

namespace {

void free_order_rec(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
    auto emit = [&](const std::string& v) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end())
            return;
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    };
    switch (f.kind) {
    case FKind::Membership:
    case FKind::Equality:
        emit(f.var);
        emit(f.var2);
        return;
    case FKind::Not:
        free_order_rec(*f.left, bound, out);
        return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
        free_order_rec(*f.left, bound, out);
        free_order_rec(*f.right, bound, out);
        return;
    case FKind::ForAll:
    case FKind::Exists:
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        if (!f.var2.empty())
            emit(f.var2);
        bound.push_back(f.var);
        free_order_rec(*f.left, bound, out);
        bound.pop_back();
        return;
    case FKind::Macro:
    case FKind::InterpretedAtom:
        for (const MacroArg& a : f.args)
            if (a.is_var())
                emit(a.var);
        return;
    }
}

} // namespace

std::vector<std::string> free_vars_in_order(const FormulaPtr& f) {
    std::vector<std::string> bound, out;
    free_order_rec(*f, bound, out);
    return out;
}

} // namespace setlab
