#include "doctest.h"

#include <algorithm>

#include "cdok/core.hpp"
#include "cdok/oracle.hpp"
#include "cli/generators.hpp"

using namespace cdok;

TEST_CASE("normalize shifts positions so the smallest is 1") {
    const std::vector<RawPoint> raw{{10, 1}, {14, 2}};
    const auto s = normalize(raw);
    REQUIRE(s.size() == 2);
    CHECK(s.points()[0] == ColoredPoint{1, 1});
    CHECK(s.points()[1] == ColoredPoint{5, 2});
    CHECK(s.universe_size() == 5);
    CHECK(s.to_original(1) == 10);
}

TEST_CASE("normalize collapses repeated positions within a color") {
    const std::vector<RawPoint> raw{{3, 1}, {3, 1}, {7, 2}};
    const auto s = normalize(raw);
    REQUIRE(s.size() == 2);
    CHECK(s.points()[0] == ColoredPoint{1, 1});
    CHECK(s.points()[1] == ColoredPoint{5, 2});
}

TEST_CASE("normalize keeps a shared position for different colors") {
    const std::vector<RawPoint> raw{{4, 1}, {4, 2}};
    const auto s = normalize(raw);
    CHECK(s.size() == 2);
    CHECK(s.positions_of(1)[0] == s.positions_of(2)[0]);
}

TEST_CASE("normalize re-indexes colors densely and keeps the mapping") {
    const std::vector<RawPoint> raw{{1, 1}, {5, 3}};
    const auto s = normalize(raw);
    CHECK(s.num_colors() == 2);
    CHECK(s.original_color(1) == 1);
    CHECK(s.original_color(2) == 3);
    CHECK(s.dense_color(3) == Color{2});
    CHECK_FALSE(s.dense_color(2).has_value());
}

TEST_CASE("normalize rejects empty input and non-positive colors") {
    CHECK_THROWS_AS(normalize(std::vector<RawPoint>{}), InvalidInput);
    CHECK_THROWS_AS(normalize(std::vector<RawPoint>{{1, 0}}), InvalidInput);
    CHECK_THROWS_AS(normalize(std::vector<RawPoint>{{1, -4}}), InvalidInput);
}

TEST_CASE("normalize is idempotent") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto raw = gen::points({gen::Shape::uniform, 300, 17, 5000, seed});
        const auto once = normalize(raw);
        const auto again = normalize(once.to_raw());
        REQUIRE(once.size() == again.size());
        CHECK(std::equal(once.points().begin(), once.points().end(), again.points().begin()));
        CHECK(once.universe_size() == again.universe_size());
        for (Color c = 1; c <= once.num_colors(); ++c) {
            CHECK(once.original_color(c) == again.original_color(c));
        }
        // Going through normalize a second time from normalized coordinates is a no-op too.
        std::vector<RawPoint> plain;
        for (const auto& p : once.points()) plain.push_back({p.position, p.color});
        const auto third = normalize(plain);
        CHECK(std::equal(once.points().begin(), once.points().end(), third.points().begin()));
    }
}

TEST_CASE("positions_of rejects unknown colors") {
    const auto s = normalize(std::vector<RawPoint>{{1, 1}});
    CHECK_THROWS_AS(s.positions_of(2), UnknownColor);
    CHECK_THROWS_AS(s.positions_of(0), UnknownColor);
}

namespace {

ColorHierarchy chain() {
    // Color 1 holds ranks 1..4; its own points come first, so its child
    // color 2 holds ranks 3..4.
    const std::vector<Position> pos{1, 2, 3, 4};
    const std::vector<Color> leaf{2, 2, 1, 1};
    const std::vector<Color> parent{0, 0, 1};
    return ColorHierarchy::from_tree(pos, leaf, parent);
}

}

TEST_CASE("a nested chain validates") {
    const auto h = chain();
    CHECK_FALSE(validate_hierarchy(h).has_value());
    CHECK(h.intervals[1] == ColorInterval{1, 4});
    CHECK(h.intervals[2] == ColorInterval{3, 4});
    CHECK(h.position_at_rank(3) == 1);
}

TEST_CASE("overlapping intervals are reported") {
    ColorHierarchy h;
    h.parent = {0, 0, 0};
    h.positions = {1, 2, 3, 4, 5};
    h.leaf_color = {1, 1, 1, 2, 2};
    h.preorder = {0, 1, 2, 3, 4};
    h.intervals = {{}, {1, 3}, {2, 5}};
    const auto v = validate_hierarchy(h);
    REQUIRE(v.has_value());
    CHECK(v->kind == HierarchyViolation::Kind::overlapping_colors);
}

TEST_CASE("identical intervals are reported as duplicate point sets") {
    ColorHierarchy h;
    h.parent = {0, 0, 1};
    h.positions = {1, 2, 3};
    h.leaf_color = {2, 2, 2};
    h.preorder = {0, 1, 2};
    h.intervals = {{}, {1, 3}, {1, 3}};
    const auto v = validate_hierarchy(h);
    REQUIRE(v.has_value());
    CHECK(v->kind == HierarchyViolation::Kind::duplicate_point_sets);
}

TEST_CASE("a child interval outside its parent is reported") {
    auto h = chain();
    h.parent = {0, 2, 0};
    const auto v = validate_hierarchy(h);
    REQUIRE(v.has_value());
    CHECK(v->kind == HierarchyViolation::Kind::child_outside_parent);
}

TEST_CASE("out of range intervals are reported") {
    auto h = chain();
    h.intervals[2] = {3, 9};
    const auto v = validate_hierarchy(h);
    REQUIRE(v.has_value());
    CHECK(v->kind == HierarchyViolation::Kind::interval_out_of_bounds);
}

TEST_CASE("from_tree rejects a color without points") {
    const std::vector<Position> pos{1, 2};
    const std::vector<Color> leaf{1, 1};
    const std::vector<Color> parent{0, 0, 1};
    CHECK_THROWS_AS(ColorHierarchy::from_tree(pos, leaf, parent), InvalidInput);
}

TEST_CASE("from_tree rejects a parent cycle") {
    const std::vector<Position> pos{1, 2};
    const std::vector<Color> leaf{1, 2};
    const std::vector<Color> parent{0, 2, 1};
    CHECK_THROWS_AS(ColorHierarchy::from_tree(pos, leaf, parent), InvalidInput);
}

TEST_CASE("every color interval holds exactly its subtree's points") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto h = gen::hierarchy({300, 40, 2000, seed});
        REQUIRE_FALSE(validate_hierarchy(h).has_value());
        const auto sets = oracle::hierarchy_point_sets(h);
        for (Color c = 1; c <= h.num_colors(); ++c) {
            std::vector<Position> in_interval;
            for (std::size_t r = h.intervals[c].first; r <= h.intervals[c].last; ++r) {
                in_interval.push_back(h.position_at_rank(r));
            }
            std::sort(in_interval.begin(), in_interval.end());
            CHECK(in_interval == sets[c]);
        }
    }
}
