#include "setlab/hset.hpp"

#include <algorithm>
#include <cassert>

namespace setlab {

bool HSet::contains(HSet x) const {
    // Elements are sorted by cmp, so binary search works.
    const auto& es = node_->elems;
    auto it = std::lower_bound(es.begin(), es.end(), x.raw(), [](const detail::SetNode* a, const detail::SetNode* b) {
        return HSet::cmp(HSet(a), HSet(b)) == std::strong_ordering::less;
    });
    return it != es.end() && *it == x.raw();
}

std::strong_ordering HSet::cmp(HSet a, HSet b) {
    if (a == b)
        return std::strong_ordering::equal;
    if (a.rank() != b.rank())
        return a.rank() <=> b.rank();
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = cmp(a.at(i), b.at(i));
        if (c != std::strong_ordering::equal)
            return c;
    }
    return a.size() <=> b.size();
}

bool HSet::is_transitive_set() const {
    for (std::size_t i = 0; i < size(); ++i) {
        HSet e = at(i);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (!contains(e.at(j)))
                return false;
    }
    return true;
}

bool HSet::is_ordinal() const {
    if (node_->ordinal_cache >= 0)
        return node_->ordinal_cache == 1;
    bool ok = is_transitive_set();
    for (std::size_t i = 0; ok && i < size(); ++i)
        ok = at(i).is_transitive_set();
    node_->ordinal_cache = ok ? 1 : 0;
    return ok;
}

std::optional<std::uint64_t> HSet::nat_value() const {
    // A hereditarily finite ordinal is exactly a von Neumann natural.
    if (!is_ordinal())
        return std::nullopt;
    return size();
}

std::string HSet::to_string() const {
    if (auto n = nat_value())
        return "#" + std::to_string(*n);
    std::string out = "{";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i)
            out += ",";
        out += at(i).to_string();
    }
    out += "}";
    return out;
}

std::size_t SetArena::KeyHash::operator()(const std::vector<HSet>& v) const {
    // Children are interned, so pointer identity is structural identity.
    std::size_t h = 1469598103934665603ull;
    for (const HSet& e : v) {
        h ^= reinterpret_cast<std::size_t>(e.raw());
        h *= 1099511628211ull;
    }
    return h;
}

SetArena::SetArena() { empty_ = intern({}); }

HSet SetArena::intern(std::vector<HSet> canonical) {
    auto it = table_.find(canonical);
    if (it != table_.end())
        return HSet(it->second);
    detail::SetNode node;
    node.elems.reserve(canonical.size());
    std::uint32_t rank = 0;
    for (const HSet& e : canonical) {
        node.elems.push_back(e.raw());
        rank = std::max(rank, e.rank() + 1);
    }
    node.rank = rank;
    node.hash = KeyHash{}(canonical);
    nodes_.push_back(std::move(node));
    const detail::SetNode* p = &nodes_.back();
    table_.emplace(std::move(canonical), p);
    return HSet(p);
}

HSet SetArena::make(std::vector<HSet> elems) {
    std::sort(elems.begin(), elems.end(),
              [](HSet a, HSet b) { return HSet::cmp(a, b) == std::strong_ordering::less; });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return intern(std::move(elems));
}

HSet SetArena::with_element(HSet x, HSet e) {
    if (x.contains(e))
        return x;
    std::vector<HSet> es;
    es.reserve(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        es.push_back(x.at(i));
    es.push_back(e);
    return make(std::move(es));
}

HSet SetArena::without_element(HSet x, HSet e) {
    if (!x.contains(e))
        return x;
    std::vector<HSet> es;
    es.reserve(x.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x.at(i) != e)
            es.push_back(x.at(i));
    return intern(std::move(es)); // removal preserves canonical order
}

HSet SetArena::binary_union(HSet x, HSet y) {
    std::vector<HSet> es;
    es.reserve(x.size() + y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        es.push_back(x.at(i));
    for (std::size_t i = 0; i < y.size(); ++i)
        es.push_back(y.at(i));
    return make(std::move(es));
}

HSet SetArena::set_union(HSet x) {
    std::vector<HSet> es;
    for (std::size_t i = 0; i < x.size(); ++i) {
        HSet e = x.at(i);
        for (std::size_t j = 0; j < e.size(); ++j)
            es.push_back(e.at(j));
    }
    return make(std::move(es));
}

HSet SetArena::transitive_closure(HSet x) {
    auto it = tc_memo_.find(x.raw());
    if (it != tc_memo_.end())
        return it->second;
    std::vector<HSet> es;
    for (std::size_t i = 0; i < x.size(); ++i) {
        HSet e = x.at(i);
        es.push_back(e);
        HSet sub = transitive_closure(e);
        for (std::size_t j = 0; j < sub.size(); ++j)
            es.push_back(sub.at(j));
    }
    HSet tc = make(std::move(es));
    tc_memo_.emplace(x.raw(), tc);
    return tc;
}

HSet SetArena::vn(std::uint64_t n) {
    if (vn_cache_.empty())
        vn_cache_.push_back(empty_);
    while (vn_cache_.size() <= n) {
        HSet prev = vn_cache_.back();
        vn_cache_.push_back(with_element(prev, prev));
    }
    return vn_cache_[n];
}

namespace {

struct SetParser {
    SetArena& arena;
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    }
    [[noreturn]] void err(const std::string& what) {
        fail(Errc::syntax, "set literal: " + what + " at offset " + std::to_string(pos));
    }
    bool eat(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    HSet parse_set() {
        skip_ws();
        if (pos >= text.size())
            err("unexpected end of input");
        // U+2205 EMPTY SET is the two bytes 0xE2 0x88 0x85.
        if (text.size() - pos >= 3 && static_cast<unsigned char>(text[pos]) == 0xE2 &&
            static_cast<unsigned char>(text[pos + 1]) == 0x88 && static_cast<unsigned char>(text[pos + 2]) == 0x85) {
            pos += 3;
            return arena.empty();
        }
        if (eat('#')) {
            if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
                err("expected digits after '#'");
            std::uint64_t n = 0;
            while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
                n = n * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                if (n > 1'000'000)
                    fail(Errc::resource_limit, "set literal: natural too large");
                ++pos;
            }
            return arena.vn(n);
        }
        if (eat('{')) {
            std::vector<HSet> es;
            skip_ws();
            if (eat('}'))
                return arena.make(std::move(es));
            for (;;) {
                es.push_back(parse_set());
                skip_ws();
                if (eat('}'))
                    return arena.make(std::move(es));
                if (!eat(','))
                    err("expected ',' or '}'");
            }
        }
        err("expected '{', '#' or empty-set glyph");
    }
};

} // namespace

HSet SetArena::parse(std::string_view text) {
    SetParser p{*this, text};
    HSet s = p.parse_set();
    p.skip_ws();
    if (p.pos != text.size())
        p.err("trailing input");
    return s;
}

} // namespace setlab
