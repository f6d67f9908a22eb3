#include "doctest.h"

#include "cdok/oracle.hpp"
#include "cli/generators.hpp"

using namespace cdok;

TEST_CASE("closest pair prefers the leftmost on ties") {
    const auto s = normalize(std::vector<RawPoint>{{1, 1}, {9, 1}, {5, 2}});
    const auto a = oracle::exact_color_distance(s, 1, 2);
    CHECK(a.distance == 4);
    CHECK(*a.witness_a == 1);
    CHECK(*a.witness_b == 5);
    CHECK(a.exact);
}

TEST_CASE("shared position is distance zero") {
    const auto s = normalize(std::vector<RawPoint>{{3, 1}, {3, 2}, {10, 2}});
    CHECK(oracle::exact_color_distance(s, 1, 2).distance == 0);
    CHECK_THROWS_AS(oracle::exact_color_distance(s, 1, 3), UnknownColor);
}

TEST_CASE("sorted merge agrees with the double loop") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto s = normalize(gen::points({static_cast<gen::Shape>(seed % 3), 20 + 12 * seed, 12, 3000, seed}));
        for (Color c = 1; c <= s.num_colors(); ++c)
            for (Color d = 1; d <= s.num_colors(); ++d) {
                const auto a = oracle::exact_color_distance(s, c, d);
                CHECK(a.distance == oracle::quadratic_color_distance(s, c, d));
                CHECK(std::llabs(*a.witness_a - *a.witness_b) == a.distance);
            }
    }
}

TEST_CASE("all-pairs matrix is symmetric with a zero diagonal") {
    const auto single = normalize(std::vector<RawPoint>{{4, 1}, {7, 1}});
    CHECK(oracle::exact_all_pairs(single) == IntMatrix(1, 1, 0));
    const auto s = normalize(gen::points({gen::Shape::uniform, 300, 15, 5000, 2}));
    const auto m = oracle::exact_all_pairs(s);
    for (Color c = 1; c <= s.num_colors(); ++c) {
        CHECK(m.at(c - 1, c - 1) == 0);
        for (Color d = 1; d <= s.num_colors(); ++d) {
            CHECK(m.at(c - 1, d - 1) == m.at(d - 1, c - 1));
            CHECK(m.at(c - 1, d - 1) >= 0);
            if (c != d) CHECK(m.at(c - 1, d - 1) == oracle::exact_color_distance(s, c, d).distance);
        }
    }
}

TEST_CASE("naive text scans") {
    CHECK(oracle::naive_occurrences("banana", "ana") == std::vector<std::size_t>{2, 4});
    CHECK(oracle::naive_occurrences("ab", "abc").empty());
    CHECK(oracle::naive_snippet_distance("axby", "x", "y") == 2);
    CHECK(oracle::naive_snippet_distance("axby", "x", "q") == kInfinity);
}

TEST_CASE("hierarchy point sets follow the tree") {
    const std::vector<Position> pos{10, 20, 30};
    const std::vector<Color> leaf{2, 3, 1};
    const std::vector<Color> parent{0, 0, 1, 1};
    const auto h = ColorHierarchy::from_tree(pos, leaf, parent);
    const auto sets = oracle::hierarchy_point_sets(h);
    CHECK(sets[1] == std::vector<Position>{10, 20, 30});
    CHECK(sets[2] == std::vector<Position>{10});
    CHECK(oracle::exact_hierarchy_distance(h, 2, 3).distance == 10);
}
