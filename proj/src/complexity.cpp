#include "setlab/complexity.hpp"

#include <algorithm>
#include <optional>

namespace setlab {

std::string ComplexityClass::to_string() const {
    switch (kind) {
    case Kind::Unclassified: return "Unclassified";
    case Kind::Delta0: return "Delta0";
    case Kind::Sigma: return "Sigma(" + std::to_string(n) + ")";
    case Kind::Pi: return "Pi(" + std::to_string(n) + ")";
    case Kind::USigma: return "USigma(" + std::to_string(n) + ")";
    case Kind::UPi: return "UPi(" + std::to_string(n) + ")";
    }
    return "Unclassified";
}

namespace {

std::pair<int, int> atom_levels(const Formula& f, const MacroRegistry& reg) {
    if (f.kind == FKind::Membership || f.kind == FKind::Equality)
        return {0, 0};
    const MacroDef& def = reg.lookup(f.name);
    return {def.sigma_level, def.pi_level};
}

bool has_unbounded(const Formula& f) {
    switch (f.kind) {
    case FKind::ForAll:
    case FKind::Exists:
        return true;
    case FKind::Not:
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        return has_unbounded(*f.left);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
        return has_unbounded(*f.left) || has_unbounded(*f.right);
    default:
        return false;
    }
}

// Largest declared atom level inside a matrix (no unbounded quantifiers).
void matrix_atom_bound(const Formula& f, const MacroRegistry& reg, int& worst) {
    switch (f.kind) {
    case FKind::Membership:
    case FKind::Equality:
        return;
    case FKind::Macro:
    case FKind::InterpretedAtom: {
        auto [s, p] = atom_levels(f, reg);
        worst = std::max({worst, s, p});
        return;
    }
    case FKind::Not:
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        matrix_atom_bound(*f.left, reg, worst);
        return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
        matrix_atom_bound(*f.left, reg, worst);
        matrix_atom_bound(*f.right, reg, worst);
        return;
    default:
        return;
    }
}

std::pair<int, int> ul_rec(const Formula& f, const MacroRegistry& reg) {
    switch (f.kind) {
    case FKind::Membership:
    case FKind::Equality:
    case FKind::Macro:
    case FKind::InterpretedAtom:
        return atom_levels(f, reg);
    case FKind::Not: {
        auto [s, p] = ul_rec(*f.left, reg);
        return {p, s};
    }
    case FKind::And:
    case FKind::Or: {
        auto [ls, lp] = ul_rec(*f.left, reg);
        auto [rs, rp] = ul_rec(*f.right, reg);
        return {std::max(ls, rs), std::max(lp, rp)};
    }
    case FKind::Implies: {
        auto [ls, lp] = ul_rec(*f.left, reg);
        auto [rs, rp] = ul_rec(*f.right, reg);
        return {std::max(lp, rs), std::max(ls, rp)};
    }
    case FKind::BoundedForAll:
    case FKind::BoundedExists:
        return ul_rec(*f.left, reg);
    case FKind::Exists: {
        auto [s, p] = ul_rec(*f.left, reg);
        int s2 = std::max(s, 1);
        return {s2, s2 + 1};
    }
    case FKind::ForAll: {
        auto [s, p] = ul_rec(*f.left, reg);
        int p2 = std::max(p, 1);
        return {p2 + 1, p2};
    }
    }
    fail(Errc::precondition, "unreachable formula kind");
}

// Exact prenex shape: alternating single unbounded quantifiers over a
// matrix.  A Delta0 verdict needs level-(0,0) atoms; a strict Sigma/Pi
// matrix admits atoms up to level (1,1).
std::optional<ComplexityClass> strict_info(const Formula& f, const MacroRegistry& reg) {
    const Formula* g = &f;
    int n = 0;
    bool lead_exists = false, last = false;
    while (g->kind == FKind::ForAll || g->kind == FKind::Exists) {
        bool ex = g->kind == FKind::Exists;
        if (n == 0)
            lead_exists = ex;
        else if (ex == last)
            return std::nullopt;
        last = ex;
        ++n;
        g = g->left.get();
    }
    if (has_unbounded(*g))
        return std::nullopt;
    int worst = 0;
    matrix_atom_bound(*g, reg, worst);
    if (n == 0)
        return worst == 0 ? std::optional(ComplexityClass::delta0()) : std::nullopt;
    if (worst > 1)
        return std::nullopt;
    return lead_exists ? ComplexityClass::sigma(n) : ComplexityClass::pi(n);
}

} // namespace

std::pair<int, int> underlined_levels(const FormulaPtr& f, const MacroRegistry& reg) {
    return ul_rec(*f, reg);
}

ComplexityClass classify(const FormulaPtr& f, const MacroRegistry& reg) {
    if (auto st = strict_info(*f, reg))
        return *st;
    auto [s, p] = ul_rec(*f, reg);
    if (s == 0 && p == 0)
        return ComplexityClass::delta0();
    return s <= p ? ComplexityClass::usigma(s) : ComplexityClass::upi(p);
}

// ---- negation normal form ------------------------------------------------

namespace {

FormulaPtr nnf_rec(const FormulaPtr& f, bool pos) {
    switch (f->kind) {
    case FKind::Membership:
    case FKind::Equality:
    case FKind::Macro:
    case FKind::InterpretedAtom:
        return pos ? f : Formula::lnot(f);
    case FKind::Not:
        return nnf_rec(f->left, !pos);
    case FKind::And:
        return pos ? Formula::land(nnf_rec(f->left, true), nnf_rec(f->right, true))
                   : Formula::lor(nnf_rec(f->left, false), nnf_rec(f->right, false));
    case FKind::Or:
        return pos ? Formula::lor(nnf_rec(f->left, true), nnf_rec(f->right, true))
                   : Formula::land(nnf_rec(f->left, false), nnf_rec(f->right, false));
    case FKind::Implies:
        return pos ? Formula::lor(nnf_rec(f->left, false), nnf_rec(f->right, true))
                   : Formula::land(nnf_rec(f->left, true), nnf_rec(f->right, false));
    case FKind::ForAll:
        return pos ? Formula::forall(f->var, nnf_rec(f->left, true))
                   : Formula::exists(f->var, nnf_rec(f->left, false));
    case FKind::Exists:
        return pos ? Formula::exists(f->var, nnf_rec(f->left, true))
                   : Formula::forall(f->var, nnf_rec(f->left, false));
    case FKind::BoundedForAll:
        return pos ? Formula::bforall(f->var, f->var2, nnf_rec(f->left, true))
                   : Formula::bexists(f->var, f->var2, nnf_rec(f->left, false));
    case FKind::BoundedExists:
        return pos ? Formula::bexists(f->var, f->var2, nnf_rec(f->left, true))
                   : Formula::bforall(f->var, f->var2, nnf_rec(f->left, false));
    }
    fail(Errc::precondition, "unreachable formula kind");
}

} // namespace

FormulaPtr nnf(const FormulaPtr& f) { return nnf_rec(f, true); }

// ---- pair collapse -------------------------------------------------------

FormulaPtr pair_collapse(const FormulaPtr& phi, const std::string& x0, const std::string& x1,
                         const std::string& fresh, CollapsePolarity pol, const MacroRegistry& reg) {
    if (classify(phi, reg).kind != ComplexityClass::Kind::Delta0)
        fail(Errc::precondition, "pair collapse needs a Delta0 formula");
    if (x0 == x1)
        fail(Errc::precondition, "pair collapse needs two distinct variables");
    if (!phi->has_free(x0) || !phi->has_free(x1))
        fail(Errc::precondition, "pair collapse variables must occur free in the formula");
    if (phi->has_free(fresh) || fresh == x0 || fresh == x1)
        fail(Errc::precondition, "the fresh variable must not occur in the formula");
    std::vector<std::string> used = all_vars(phi);
    used.push_back(fresh);
    std::string u = fresh_var(used);
    FormulaPtr pairing = Formula::macro("Pair", {MacroArg::v(x0), MacroArg::v(x1), MacroArg::v(fresh)});
    if (pol == CollapsePolarity::Existential) {
        FormulaPtr body = Formula::land(pairing, phi);
        return Formula::bexists(u, fresh, Formula::bexists(x0, u, Formula::bexists(x1, u, body)));
    }
    FormulaPtr body = Formula::implies(pairing, phi);
    return Formula::bforall(u, fresh, Formula::bforall(x0, u, Formula::bforall(x1, u, body)));
}

// ---- prenex dual ---------------------------------------------------------

FormulaPtr dual(const FormulaPtr& f) {
    std::vector<std::pair<bool, std::string>> prefix; // (universal, var)
    FormulaPtr matrix = f;
    while (matrix->kind == FKind::ForAll || matrix->kind == FKind::Exists) {
        prefix.emplace_back(matrix->kind == FKind::ForAll, matrix->var);
        matrix = matrix->left;
    }
    if (has_unbounded(*matrix))
        fail(Errc::precondition, "dual needs a prenex formula");
    FormulaPtr out = nnf_rec(matrix, false);
    for (std::size_t i = prefix.size(); i-- > 0;)
        out = prefix[i].first ? Formula::exists(prefix[i].second, out) : Formula::forall(prefix[i].second, out);
    return out;
}

// ---- normalization -------------------------------------------------------

namespace {

struct Quant {
    bool univ;
    std::string var;
};

FormulaPtr assemble(const std::vector<Quant>& qs, std::size_t from, FormulaPtr m) {
    FormulaPtr out = std::move(m);
    for (std::size_t i = qs.size(); i-- > from;)
        out = qs[i].univ ? Formula::forall(qs[i].var, out) : Formula::exists(qs[i].var, out);
    return out;
}

FormulaPtr assemble_all(const std::vector<Quant>& qs, FormulaPtr m) { return assemble(qs, 0, std::move(m)); }

int block_count(const std::vector<Quant>& qs) {
    int b = 0;
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (i == 0 || qs[i].univ != qs[i - 1].univ)
            ++b;
    return b;
}

struct Normalizer {
    const MacroRegistry& reg;
    bool allow_collection;
    std::vector<std::string> used;
    std::vector<NormalizeStep> steps;

    std::string fresh() {
        std::string v = fresh_var(used);
        used.push_back(v);
        return v;
    }

    void record(const char* rule, FormulaPtr before, FormulaPtr after, bool premise) {
        steps.push_back({rule, std::move(before), std::move(after), premise});
    }

    static FormulaPtr bound_q(bool univ, const std::string& x, const std::string& a, FormulaPtr body) {
        return univ ? Formula::bforall(x, a, std::move(body)) : Formula::bexists(x, a, std::move(body));
    }

    static FormulaPtr guard_matrix(bool univ, const std::string& x, const std::string& a, FormulaPtr m) {
        FormulaPtr guard = Formula::mem(x, a);
        return univ ? Formula::implies(std::move(guard), std::move(m))
                    : Formula::land(std::move(guard), std::move(m));
    }

    // Moves the bounded quantifier Q x in a inward through the prefix p over
    // matrix m.  Commuting past a same-direction unbounded quantifier is
    // valid in every structure; crossing an opposite one either promotes via
    // Collection (allow_collection) or falls back to unbounding the
    // quantifier in place, which is also structure-valid but lengthens the
    // prefix.
    std::pair<std::vector<Quant>, FormulaPtr> push_bounded(bool univ, const std::string& x, const std::string& a,
                                                           std::vector<Quant> p, FormulaPtr m) {
        if (p.empty())
            return {{}, bound_q(univ, x, a, std::move(m))};
        FormulaPtr before = bound_q(univ, x, a, assemble_all(p, m));
        Quant head = p.front();
        std::vector<Quant> rest(p.begin() + 1, p.end());
        if (head.univ == univ) {
            auto [p2, m2] = push_bounded(univ, x, a, std::move(rest), std::move(m));
            p2.insert(p2.begin(), head);
            record("commute-bounded", std::move(before), assemble_all(p2, m2), false);
            return {std::move(p2), std::move(m2)};
        }
        if (!allow_collection) {
            std::vector<Quant> out = std::move(p);
            FormulaPtr m2 = guard_matrix(univ, x, a, std::move(m));
            out.insert(out.begin(), Quant{univ, x});
            record(univ ? "unbound-forall" : "unbound-exists", std::move(before), assemble_all(out, m2), false);
            return {std::move(out), std::move(m2)};
        }
        std::string b = fresh();
        FormulaPtr local = bound_q(univ, x, a, bound_q(head.univ, head.var, b, assemble_all(rest, m)));
        FormulaPtr after = head.univ ? Formula::forall(b, local) : Formula::exists(b, local);
        record(head.univ ? "collect-forall" : "collect-exists", std::move(before), std::move(after), true);
        auto [p2, m2] = push_bounded(head.univ, head.var, b, std::move(rest), std::move(m));
        auto [p3, m3] = push_bounded(univ, x, a, std::move(p2), std::move(m2));
        p3.insert(p3.begin(), Quant{head.univ, b});
        return {std::move(p3), std::move(m3)};
    }

    // Left-first greedy block merge of two prefixes joined by a connective.
    static std::vector<Quant> merge_prefixes(const std::vector<Quant>& a, const std::vector<Quant>& b) {
        auto to_blocks = [](const std::vector<Quant>& p) {
            std::vector<std::vector<Quant>> bs;
            for (const Quant& q : p) {
                if (bs.empty() || bs.back().front().univ != q.univ)
                    bs.push_back({});
                bs.back().push_back(q);
            }
            return bs;
        };
        auto ba = to_blocks(a), bb = to_blocks(b);
        std::vector<Quant> out;
        auto append = [&out](const std::vector<Quant>& blk) { out.insert(out.end(), blk.begin(), blk.end()); };
        std::size_t i = 0, j = 0;
        while (i < ba.size() && j < bb.size()) {
            if (ba[i].front().univ == bb[j].front().univ) {
                append(ba[i++]);
                append(bb[j++]);
            } else if (ba.size() - i >= bb.size() - j) {
                append(ba[i++]);
            } else {
                append(bb[j++]);
            }
        }
        for (; i < ba.size(); ++i)
            append(ba[i]);
        for (; j < bb.size(); ++j)
            append(bb[j]);
        return out;
    }

    std::pair<std::vector<Quant>, FormulaPtr> pull(const FormulaPtr& f) {
        if (!has_unbounded(*f))
            return {{}, f};
        switch (f->kind) {
        case FKind::Exists:
        case FKind::ForAll: {
            auto [p, m] = pull(f->left);
            p.insert(p.begin(), Quant{f->kind == FKind::ForAll, f->var});
            return {std::move(p), std::move(m)};
        }
        case FKind::BoundedExists:
        case FKind::BoundedForAll: {
            auto [p, m] = pull(f->left);
            return push_bounded(f->kind == FKind::BoundedForAll, f->var, f->var2, std::move(p), std::move(m));
        }
        case FKind::And:
        case FKind::Or: {
            auto [p1, m1] = pull(f->left);
            auto [p2, m2] = pull(f->right);
            auto join = [&](FormulaPtr a, FormulaPtr b) {
                return f->kind == FKind::And ? Formula::land(std::move(a), std::move(b))
                                             : Formula::lor(std::move(a), std::move(b));
            };
            FormulaPtr before = join(assemble_all(p1, m1), assemble_all(p2, m2));
            std::vector<Quant> merged = merge_prefixes(p1, p2);
            FormulaPtr mat = join(m1, m2);
            record("merge-prefix", std::move(before), assemble_all(merged, mat), false);
            return {std::move(merged), std::move(mat)};
        }
        default:
            fail(Errc::classification, "unexpected node while prenexing");
        }
    }

    // Collapses adjacent same-direction quantifier pairs through Kuratowski
    // pairs, innermost first, until every block is a single quantifier.
    FormulaPtr collapse_to(std::size_t target, std::vector<Quant> p, FormulaPtr mat) {
        while (p.size() > target) {
            std::size_t k = p.size() - 2;
            while (p[k].univ != p[k + 1].univ) {
                if (k == 0)
                    fail(Errc::classification, "no adjacent quantifier pair to collapse");
                --k;
            }
            bool univ = p[k].univ;
            std::string x = p[k].var, y = p[k + 1].var;
            std::string w = fresh(), u = fresh();
            FormulaPtr before = assemble(p, k, mat);
            FormulaPtr pairing = Formula::macro("Pair", {MacroArg::v(x), MacroArg::v(y), MacroArg::v(w)});
            FormulaPtr body = univ ? Formula::implies(std::move(pairing), std::move(mat))
                                   : Formula::land(std::move(pairing), std::move(mat));
            mat = bound_q(univ, u, w, bound_q(univ, x, u, bound_q(univ, y, u, std::move(body))));
            p[k] = Quant{univ, w};
            p.erase(p.begin() + k + 1);
            record(univ ? "collapse-forall" : "collapse-exists", std::move(before), assemble(p, k, mat), true);
        }
        return assemble_all(p, mat);
    }
};

} // namespace

FormulaPtr normalize(const FormulaPtr& f, int collection_level, std::vector<NormalizeStep>* audit,
                     const MacroRegistry& reg) {
    if (audit)
        audit->clear();
    ComplexityClass c = classify(f, reg);
    if (c.strict())
        return f;
    if (!has_unbounded(*f))
        return f; // only declared atom levels lift it; nothing to rearrange
    int m = c.n;

    FormulaPtr freshened = freshen_binders(f);
    FormulaPtr g = nnf(freshened);

    Normalizer n1{reg, false, all_vars(g), {}};
    Normalizer n2{reg, true, all_vars(g), {}};
    Normalizer* chosen = &n1;
    auto [p1, m1] = n1.pull(g);
    std::vector<Quant> prefix;
    FormulaPtr matrix;
    if (block_count(p1) == m) {
        prefix = std::move(p1);
        matrix = std::move(m1);
    } else {
        if (m > collection_level)
            fail(Errc::normalization_refused, "level " + std::to_string(m) +
                                                  " needs Collection beyond level " +
                                                  std::to_string(collection_level));
        auto [p2, m2] = n2.pull(g);
        if (block_count(p2) != m)
            fail(Errc::classification, "prenexing reached " + std::to_string(block_count(p2)) +
                                           " blocks instead of " + std::to_string(m));
        chosen = &n2;
        prefix = std::move(p2);
        matrix = std::move(m2);
    }

    FormulaPtr out = chosen->collapse_to(static_cast<std::size_t>(m), std::move(prefix), std::move(matrix));

    ComplexityClass cc = classify(out, reg);
    if (!cc.strict() || cc.kind == ComplexityClass::Kind::Delta0 || cc.n != m)
        fail(Errc::classification, "normalization produced " + cc.to_string() + " instead of level " +
                                       std::to_string(m));
    if (audit) {
        audit->push_back({"freshen-binders", f, freshened, false});
        audit->push_back({"negation-normal-form", freshened, g, false});
        for (NormalizeStep& s : chosen->steps)
            audit->push_back(std::move(s));
    }
    return out;
}

} // namespace setlab
