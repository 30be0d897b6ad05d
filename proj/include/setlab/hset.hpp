#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "setlab/error.hpp"

namespace setlab {

class SetArena;

namespace detail {
struct SetNode {
    std::vector<const SetNode*> elems; // canonical order: (rank, recursive lex)
    std::uint32_t rank = 0;
    std::size_t hash = 0;
    mutable int ordinal_cache = -1; // -1 unknown, 0 no, 1 yes
};
} // namespace detail

// Immutable handle to a hash-consed hereditarily finite set.  Handles are
// only valid while the owning SetArena is alive.  Equality is pointer
// identity, which coincides with extensional equality because construction
// canonicalizes and interns.
class HSet {
public:
    HSet() = default;

    bool valid() const { return node_ != nullptr; }
    std::size_t size() const { return node_->elems.size(); }
    bool is_empty() const { return node_->elems.empty(); }
    std::uint32_t rank() const { return node_->rank; }

    HSet at(std::size_t i) const { return HSet(node_->elems[i]); }
    bool contains(HSet x) const;

    bool operator==(const HSet& o) const = default;

    // Canonical structural order: by rank, then lexicographically on the
    // canonical element sequences.  This is a total order on HF sets and is
    // unrelated to the constructibility order of a level.
    static std::strong_ordering cmp(HSet a, HSet b);

    // Prints von Neumann naturals as "#n", everything else in braces.
    std::string to_string() const;

    // n when the set is the n-th von Neumann natural (equivalently, a finite
    // ordinal), nullopt otherwise.
    std::optional<std::uint64_t> nat_value() const;
    bool is_ordinal() const;
    bool is_transitive_set() const;

    const detail::SetNode* raw() const { return node_; }

private:
    friend class SetArena;
    explicit HSet(const detail::SetNode* n) : node_(n) {}
    const detail::SetNode* node_ = nullptr;
};

struct HSetHash {
    std::size_t operator()(const HSet& s) const { return s.raw()->hash; }
};

// Owner of all set nodes.  Not thread safe: confine construction of sets to
// one thread per arena.
class SetArena {
public:
    SetArena();
    SetArena(const SetArena&) = delete;
    SetArena& operator=(const SetArena&) = delete;

    HSet empty() const { return empty_; }
    // Canonicalizes (sorts, dedups) and interns.
    HSet make(std::vector<HSet> elems);

    HSet singleton(HSet x) { return make({x}); }
    HSet pair(HSet x, HSet y) { return make({x, y}); }
    // Kuratowski pair {{x},{x,y}}.
    HSet kpair(HSet x, HSet y) { return pair(singleton(x), pair(x, y)); }
    // x together with e.
    HSet with_element(HSet x, HSet e);
    // x without e; no-op when e is not an element.
    HSet without_element(HSet x, HSet e);
    HSet binary_union(HSet x, HSet y);
    // Union of the elements of x.
    HSet set_union(HSet x);
    // Transitive closure of x: every element of x plus everything reachable
    // below them; x itself is not included.
    HSet transitive_closure(HSet x);
    // n-th von Neumann natural.
    HSet vn(std::uint64_t n);

    // Accepts "{...}" braces, "#n" decimal shorthand, and the empty-set glyph.
    HSet parse(std::string_view text);

    std::size_t node_count() const { return nodes_.size(); }

private:
    HSet intern(std::vector<HSet> canonical);

    std::deque<detail::SetNode> nodes_;
    struct KeyHash {
        std::size_t operator()(const std::vector<HSet>& v) const;
    };
    std::unordered_map<std::vector<HSet>, const detail::SetNode*, KeyHash> table_;
    std::unordered_map<const detail::SetNode*, HSet> tc_memo_;
    std::vector<HSet> vn_cache_;
    HSet empty_;
};

} // namespace setlab
