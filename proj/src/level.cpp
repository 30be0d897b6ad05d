#include "setlab/level.hpp"

#include <algorithm>

#include "setlab/godel.hpp"

namespace setlab {

std::size_t Level::position(HSet x) const {
    auto it = position_.find(x);
    if (it == position_.end())
        fail(Errc::not_in_level, x.to_string() + " is not in level " + std::to_string(index));
    return it->second;
}

int Level::birth(HSet x) const { return births[position(x)]; }

std::strong_ordering Level::l_order(HSet x, HSet y) const { return position(x) <=> position(y); }

HSet Level::l_min_element(HSet s) const {
    if (s.is_empty())
        fail(Errc::precondition, "least element of the empty set");
    HSet best = s.at(0);
    std::size_t bestPos = position(best);
    for (std::size_t i = 1; i < s.size(); ++i) {
        std::size_t pos = position(s.at(i));
        if (pos < bestPos) {
            best = s.at(i);
            bestPos = pos;
        }
    }
    return best;
}

namespace {

// Quantifier-free definitions over the subject x and parameters p, q.
constexpr const char* kSubject = "x";
constexpr const char* kParams[2] = {"p", "q"};
constexpr int kAstCap = 5;

std::vector<FormulaPtr> formula_stream() {
    std::vector<std::vector<FormulaPtr>> by_size(kAstCap + 1);
    const char* vars[3] = {kSubject, kParams[0], kParams[1]};
    for (const char* v : vars)
        for (const char* w : vars) {
            by_size[1].push_back(Formula::mem(v, w));
            by_size[1].push_back(Formula::eq(v, w));
        }
    for (int s = 2; s <= kAstCap; ++s) {
        for (const FormulaPtr& f : by_size[s - 1])
            by_size[s].push_back(Formula::lnot(f));
        for (int a = 1; a + 1 < s; ++a)
            for (const FormulaPtr& l : by_size[a])
                for (const FormulaPtr& r : by_size[s - 1 - a]) {
                    by_size[s].push_back(Formula::land(l, r));
                    by_size[s].push_back(Formula::lor(l, r));
                }
    }
    std::vector<std::pair<std::string, FormulaPtr>> keyed;
    for (auto& sized : by_size)
        for (FormulaPtr& f : sized)
            if (f->has_free(kSubject))
                keyed.emplace_back(print(f), std::move(f));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size())
            return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::vector<FormulaPtr> out;
    out.reserve(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i && keyed[i].first == keyed[i - 1].first)
            continue;
        out.push_back(std::move(keyed[i].second));
    }
    return out;
}

bool qf_eval(const Formula& f, HSet x, HSet p, HSet q) {
    auto val = [&](const std::string& v) {
        if (v == kSubject)
            return x;
        return v == kParams[0] ? p : q;
    };
    switch (f.kind) {
    case FKind::Membership:
        return val(f.var2).contains(val(f.var));
    case FKind::Equality:
        return val(f.var) == val(f.var2);
    case FKind::Not:
        return !qf_eval(*f.left, x, p, q);
    case FKind::And:
        return qf_eval(*f.left, x, p, q) && qf_eval(*f.right, x, p, q);
    case FKind::Or:
        return qf_eval(*f.left, x, p, q) || qf_eval(*f.right, x, p, q);
    default:
        fail(Errc::precondition, "unexpected connective in a definition");
    }
}

} // namespace

std::vector<HSet> LevelBuilder::definable_subsets(const Level& m, std::vector<Witness>* wits) {
    if (m.elements.size() > 20)
        fail(Errc::resource_limit, "level too large to enumerate definable subsets");
    const std::size_t target = std::size_t{1} << m.elements.size();
    static const std::vector<FormulaPtr> stream = formula_stream();

    std::vector<HSet> found;
    std::unordered_map<HSet, bool, HSetHash> seen;
    auto consider = [&](const FormulaPtr& f, HSet p, HSet q, std::vector<HSet> tuple) {
        std::vector<HSet> members;
        for (HSet x : m.elements)
            if (qf_eval(*f, x, p, q))
                members.push_back(x);
        HSet sub = arena_.make(std::move(members));
        if (seen.emplace(sub, true).second) {
            found.push_back(sub);
            if (wits)
                wits->push_back(Witness{encode(f), std::move(tuple)});
        }
    };

    for (const FormulaPtr& f : stream) {
        bool uses_p = f->has_free(kParams[0]);
        bool uses_q = f->has_free(kParams[1]);
        if (!uses_p && !uses_q) {
            consider(f, arena_.empty(), arena_.empty(), {});
        } else if (uses_p && !uses_q) {
            for (HSet p : m.elements)
                consider(f, p, arena_.empty(), {p});
        } else if (!uses_p) {
            for (HSet q : m.elements)
                consider(f, arena_.empty(), q, {q});
        } else {
            for (HSet p : m.elements)
                for (HSet q : m.elements)
                    consider(f, p, q, {p, q});
        }
        if (found.size() == target)
            return found;
    }
    fail(Errc::resource_limit, "definition stream exhausted before the power set saturated");
}

const Level& LevelBuilder::build(int n) {
    if (n < 0 || n > kMaxIndex)
        fail(Errc::resource_limit, "level index " + std::to_string(n) + " outside the built range 0.." +
                                       std::to_string(kMaxIndex));
    while (static_cast<int>(cache_.size()) <= n) {
        int k = static_cast<int>(cache_.size());
        Level lv;
        lv.index = k;
        if (k > 0) {
            const Level& prev = cache_[k - 1];
            lv.elements = prev.elements;
            lv.births = prev.births;
            lv.witnesses = prev.witnesses;
            lv.position_ = prev.position_;
            auto add = [&](HSet s, std::optional<Witness> w) {
                if (lv.contains(s))
                    return;
                lv.position_[s] = lv.elements.size();
                lv.elements.push_back(s);
                lv.births.push_back(k);
                lv.witnesses.push_back(std::move(w));
            };
            if (k <= kMaxFull) {
                std::vector<Witness> wits;
                std::vector<HSet> subs = definable_subsets(prev, &wits);
                for (std::size_t i = 0; i < subs.size(); ++i)
                    add(subs[i], wits[i]);
            } else {
                // Size-only stage: the full power set, new elements in the
                // canonical structural order, no witnesses.
                std::vector<HSet> fresh;
                std::size_t count = std::size_t{1} << prev.elements.size();
                for (std::size_t mask = 0; mask < count; ++mask) {
                    std::vector<HSet> members;
                    for (std::size_t i = 0; i < prev.elements.size(); ++i)
                        if (mask & (std::size_t{1} << i))
                            members.push_back(prev.elements[i]);
                    HSet s = arena_.make(std::move(members));
                    if (!lv.contains(s))
                        fresh.push_back(s);
                }
                std::sort(fresh.begin(), fresh.end(),
                          [](HSet a, HSet b) { return HSet::cmp(a, b) < 0; });
                fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
                for (HSet s : fresh)
                    add(s, std::nullopt);
            }
        }
        cache_.push_back(std::move(lv));
    }
    return cache_[n];
}

HSet LevelBuilder::level_set(int n) { return arena_.make(build(n).elements); }

} // namespace setlab
