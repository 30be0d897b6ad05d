#include <doctest.h>

#include <algorithm>
#include <set>

#include "setlab/godel.hpp"
#include "setlab/level.hpp"
#include "setlab/parser.hpp"
#include "setlab/truth.hpp"
#include "support/check.hpp"

using namespace setlab;

namespace {

// Elements as a structural set, order forgotten.
std::set<std::string> as_set(const std::vector<HSet>& v) {
    std::set<std::string> out;
    for (HSet s : v)
        out.insert(s.to_string());
    return out;
}

} // namespace

TEST_SUITE("level") {

TEST_CASE("first levels in enumeration order") {
    SetArena a;
    LevelBuilder lb(a);
    CHECK(lb.build(0).elements.empty());
    CHECK(lb.build(1).elements == std::vector<HSet>{a.empty()});
    CHECK(lb.build(2).elements == std::vector<HSet>{a.empty(), a.vn(1)});
    // The order of first appearance at stage 3: the two new subsets arrive
    // parameter-first ({{∅}} via "p = x" at p = {∅}) before the full set.
    CHECK(lb.build(3).elements ==
          std::vector<HSet>{a.empty(), a.vn(1), a.singleton(a.vn(1)), a.vn(2)});
    CHECK(lb.build(3).births == std::vector<int>{1, 2, 3, 3});
}

TEST_CASE("levels agree with the iterated power set") {
    SetArena a;
    LevelBuilder lb(a);
    std::vector<HSet> stage; // V_k elements
    for (int k = 0; k <= 4; ++k) {
        const Level& lv = lb.build(k);
        CHECK(as_set(lv.elements) == as_set(stage));
        // Next stage: all subsets of this one.
        std::vector<HSet> next;
        for (std::size_t mask = 0; mask < (std::size_t{1} << stage.size()); ++mask) {
            std::vector<HSet> members;
            for (std::size_t i = 0; i < stage.size(); ++i)
                if (mask & (std::size_t{1} << i))
                    members.push_back(stage[i]);
            next.push_back(a.make(std::move(members)));
        }
        std::sort(next.begin(), next.end(), [](HSet x, HSet y) { return HSet::cmp(x, y) < 0; });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        stage = std::move(next);
    }
    CHECK(lb.build(4).elements.size() == 16);
    CHECK(lb.build(5).elements.size() == 65536);
}

TEST_CASE("cumulative order and births") {
    SetArena a;
    LevelBuilder lb(a);
    const Level& l3 = lb.build(3);
    const Level& l4 = lb.build(4);
    // L4 starts with L3 in the same order.
    for (std::size_t i = 0; i < l3.elements.size(); ++i) {
        CHECK(l4.elements[i] == l3.elements[i]);
        CHECK(l4.births[i] == l3.births[i]);
    }
    for (std::size_t i = l3.elements.size(); i < l4.elements.size(); ++i)
        CHECK(l4.births[i] == 4);
    CHECK(l4.birth(a.empty()) == 1);
    CHECK(l4.birth(a.vn(2)) == 3);
}

TEST_CASE("every full-stage element carries a correct witness") {
    SetArena a;
    LevelBuilder lb(a);
    const Level& l4 = lb.build(4);
    const Level& l3 = lb.build(3);
    for (std::size_t i = 0; i < l4.elements.size(); ++i) {
        REQUIRE(l4.witnesses[i].has_value());
        const Witness& w = *l4.witnesses[i];
        FormulaPtr f = decode(w.code);
        int stage = l4.births[i];
        const Level& prev = lb.build(stage - 1);
        // Parameters fill the used slots in order: p first, then q.
        Assignment env;
        std::size_t used = 0;
        if (f->has_free("p"))
            env["p"] = w.params[used++];
        if (f->has_free("q"))
            env["q"] = w.params[used++];
        CHECK(used == w.params.size());
        // The witness definition reproduces the element over the previous
        // level.
        std::vector<HSet> got;
        for (HSet s : prev.elements) {
            env["x"] = s;
            if (model_check(lb, l3, f, env))
                got.push_back(s);
        }
        CHECK(a.make(std::move(got)) == l4.elements[i]);
        for (HSet p : w.params)
            CHECK(prev.contains(p));
    }
}

TEST_CASE("definable_subsets saturates the power set") {
    SetArena a;
    LevelBuilder lb(a);
    std::vector<Witness> wits;
    std::vector<HSet> subs = lb.definable_subsets(lb.build(1), &wits);
    CHECK(subs.size() == 2);
    CHECK(wits.size() == 2);
    CHECK(as_set(subs) == std::set<std::string>{"#0", "#1"});
    CHECK(lb.definable_subsets(lb.build(3)).size() == 16);
}

TEST_CASE("size-only stage has no witnesses") {
    SetArena a;
    LevelBuilder lb(a);
    const Level& l5 = lb.build(5);
    for (std::size_t i = 0; i < l5.elements.size(); ++i)
        CHECK(l5.witnesses[i].has_value() == (l5.births[i] <= 4));
    CHECK(error_code_of([&] { lb.build(6); }) == Errc::resource_limit);
}

TEST_CASE("constructibility order") {
    SetArena a;
    LevelBuilder lb(a);
    const Level& l4 = lb.build(4);
    CHECK(l4.position(a.empty()) == 0);
    CHECK(l4.l_order(a.empty(), a.vn(1)) == std::strong_ordering::less);
    CHECK(l4.l_order(a.vn(2), a.vn(1)) == std::strong_ordering::greater);
    CHECK(l4.l_order(a.vn(2), a.vn(2)) == std::strong_ordering::equal);
    // Least element under the order, not under rank.
    CHECK(l4.l_min_element(a.vn(2)) == a.empty());
    CHECK(l4.l_min_element(a.make({a.singleton(a.vn(1)), a.vn(1)})) == a.vn(1));
    CHECK(error_code_of([&] { l4.l_min_element(a.empty()); }) == Errc::precondition);
    CHECK(error_code_of([&] { l4.position(a.vn(5)); }) == Errc::not_in_level);
    CHECK(!l4.contains(a.vn(5)));
}

TEST_CASE("independent builders agree exactly") {
    SetArena a1, a2;
    LevelBuilder b1(a1), b2(a2);
    const Level& x = b1.build(4);
    const Level& y = b2.build(4);
    REQUIRE(x.elements.size() == y.elements.size());
    for (std::size_t i = 0; i < x.elements.size(); ++i) {
        CHECK(x.elements[i].to_string() == y.elements[i].to_string());
        CHECK(x.births[i] == y.births[i]);
        CHECK(x.witnesses[i]->code == y.witnesses[i]->code);
    }
}

TEST_CASE("level_set") {
    SetArena a;
    LevelBuilder lb(a);
    CHECK(lb.level_set(0) == a.empty());
    CHECK(lb.level_set(2) == a.vn(2));
    HSet v4 = lb.level_set(4);
    CHECK(v4.size() == 16);
    CHECK(v4.rank() == 4);
    CHECK(v4.is_transitive_set());
}

} // TEST_SUITE
