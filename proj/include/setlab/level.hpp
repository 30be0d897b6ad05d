#pragma once

#include <compare>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "setlab/formula.hpp"
#include "setlab/hset.hpp"

namespace setlab {

// Definition that produced an element: the subset of the previous level
// satisfying the coded formula at the recorded parameter values.
struct Witness {
    Nat code;
    std::vector<HSet> params;
};

// A built constructible level.  `elements` is cumulative and carries the
// order of first appearance, which is the materialized fragment of the
// global constructibility order: earlier birth stage first, within a stage
// the deterministic enumeration order.  Witnesses are absent in size-only
// mode (index 5).
struct Level {
    int index = 0;
    std::vector<HSet> elements;
    std::vector<int> births;                      // parallel to elements
    std::vector<std::optional<Witness>> witnesses; // parallel to elements

    bool contains(HSet x) const { return position_.count(x) != 0; }
    // Rank in the constructibility order; not-in-level error otherwise.
    std::size_t position(HSet x) const;
    int birth(HSet x) const;
    std::strong_ordering l_order(HSet x, HSet y) const;
    // The level's <_L-least (equivalently first-born) element of s.
    HSet l_min_element(HSet s) const;

    friend class LevelBuilder;

private:
    std::unordered_map<HSet, std::size_t, HSetHash> position_;
};

// Constructs levels by iterating the definable-power-set operator.  Levels
// 0 through 4 are built in full, with a witness definition for every
// element; level 5 is built size-only (its new elements are appended in the
// canonical structural order, without witnesses).
class LevelBuilder {
public:
    static constexpr int kMaxFull = 4;
    static constexpr int kMaxIndex = 5;

    explicit LevelBuilder(SetArena& arena) : arena_(arena) {}
    LevelBuilder(const LevelBuilder&) = delete;
    LevelBuilder& operator=(const LevelBuilder&) = delete;

    SetArena& arena() { return arena_; }

    // References stay valid for the builder's lifetime: later builds never
    // move already-built levels.
    const Level& build(int n);
    // The level as a single set.
    HSet level_set(int n);

    // All subsets of m definable over (m, ∈) with up to two parameters,
    // enumerated deterministically: formula codes ascending, parameter
    // tuples in the level order, first definition kept.  Stops once all
    // 2^|m| subsets are found; resource-limit error if the formula stream
    // is exhausted first.
    std::vector<HSet> definable_subsets(const Level& m, std::vector<Witness>* wits = nullptr);

private:
    SetArena& arena_;
    std::deque<Level> cache_; // deque: growth keeps handed-out references alive
};

} // namespace setlab
