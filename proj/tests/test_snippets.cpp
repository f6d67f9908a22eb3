#include "doctest.h"

#include <random>
#include <set>

#include "cdok/oracle.hpp"
#include "cdok/snippets.hpp"
#include "cdok/suffix_array.hpp"
#include "checks.hpp"
#include "cli/generators.hpp"

using namespace cdok;

namespace {

std::vector<std::uint32_t> naive_sa(const std::string& t) {
    std::vector<std::uint32_t> sa(t.size() + 1);
    for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<std::uint32_t>(i);
    std::sort(sa.begin(), sa.end(), [&](auto a, auto b) {
        return std::string_view(t).substr(a) < std::string_view(t).substr(b);
    });
    return sa;
}

HierarchyOptions tau(std::int64_t t) {
    HierarchyOptions o;
    o.tau = t;
    return o;
}

}

TEST_CASE("suffix array and lcp match direct sorting") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 60; ++round) {
        const auto t = gen::text(1 + rng() % 300, 1 + rng() % 4, rng());
        const auto sa = build_suffix_array(t);
        REQUIRE(sa.sa == naive_sa(t));
        CHECK(sa.sa[0] == t.size());
        for (std::size_t r = 1; r < sa.sa.size(); ++r) {
            const std::string_view a = std::string_view(t).substr(sa.sa[r - 1]);
            const std::string_view b = std::string_view(t).substr(sa.sa[r]);
            std::size_t l = 0;
            while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
            CHECK(sa.lcp[r] == l);
        }
    }
    const std::string bytes{"\xff\x00\x01\xff\x00", 5};
    CHECK(build_suffix_array(bytes).sa == naive_sa(bytes));
}

TEST_CASE("two distinct letters give a root and two leaves") {
    const auto t = build_text_hierarchy("ab");
    CHECK(t.hierarchy.num_colors() == 3);
    CHECK(t.nodes[0].lb == 1);
    CHECK(t.nodes[0].rb == 2);
    CHECK(t.hierarchy.parent[2] == 1);
    CHECK(t.hierarchy.parent[3] == 1);
}

TEST_CASE("a repeated letter gives a chain") {
    const auto idx = TextIndex::build("aaa", tau(1));
    const auto ca = idx.locate("a");
    const auto caa = idx.locate("aa");
    const auto caaa = idx.locate("aaa");
    REQUIRE(ca);
    REQUIRE(caa);
    REQUIRE(caaa);
    // Internal nodes "a" and "aa" plus one leaf per suffix; the root repeats
    // the "a" interval and is dropped.
    CHECK(idx.tree().hierarchy.num_colors() == 5);
    CHECK(idx.tree().hierarchy.intervals[*ca] == ColorInterval{1, 3});
    CHECK(idx.tree().hierarchy.intervals[*caa] == ColorInterval{2, 3});
    CHECK(idx.tree().hierarchy.intervals[*caaa] == ColorInterval{3, 3});
    CHECK(idx.tree().hierarchy.parent[*caa] == *ca);
    CHECK(idx.tree().hierarchy.parent[*caaa] == *caa);
    CHECK(idx.occurrences("aa") == std::vector<std::size_t>{1, 2});
}

TEST_CASE("pattern occurrences in banana") {
    const auto idx = TextIndex::build("banana", tau(2));
    CHECK(idx.occurrences("ana") == std::vector<std::size_t>{2, 4});
    CHECK(idx.occurrences("a") == std::vector<std::size_t>{2, 4, 6});
    CHECK(idx.occurrences("nab").empty());
    CHECK_FALSE(idx.locate("x").has_value());
}

TEST_CASE("snippet queries") {
    const auto idx = TextIndex::build("axby", tau(1));
    const auto a = idx.query("x", "y");
    CHECK(a.distance == 2);
    CHECK(*a.witness_a == 2);
    CHECK(*a.witness_b == 4);
    CHECK(idx.query("by", "by").distance == 0);
    try {
        idx.query("x", "q");
        FAIL("expected NotFound");
    } catch (const NotFound& e) {
        CHECK(e.which() == 2);
    }
    try {
        idx.query("zz", "x");
        FAIL("expected NotFound");
    } catch (const NotFound& e) {
        CHECK(e.which() == 1);
    }
    CHECK_THROWS_AS(TextIndex::build("", {}), InvalidInput);
}

TEST_CASE("every substring maps to exactly its occurrences") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 12; ++round) {
        const std::size_t len = round < 6 ? 1 + rng() % 40 : 256;
        const auto t = gen::text(len, 1 + rng() % 3, rng());
        const auto idx = TextIndex::build(t, tau(4));
        std::set<std::string> seen;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t l = 1; i + l <= t.size(); ++l) {
                const auto sub = t.substr(i, l);
                if (!seen.insert(sub).second) continue;
                const auto color = idx.locate(sub);
                REQUIRE(color);
                // The color's interval in the pre-order array is exactly the occurrence set.
                const auto iv = idx.tree().hierarchy.intervals[*color];
                std::vector<std::size_t> from_color;
                for (std::size_t r = iv.first; r <= iv.last; ++r)
                    from_color.push_back(static_cast<std::size_t>(idx.tree().hierarchy.position_at_rank(r)));
                std::sort(from_color.begin(), from_color.end());
                if (from_color != oracle::naive_occurrences(t, sub)) {
                    FAIL_CHECK("occurrence set differs for '" << sub << "'");
                }
            }
    }
}

TEST_CASE("sampled substrings of longer texts map to their occurrences") {
    std::mt19937_64 rng(10);
    for (int round = 0; round < 4; ++round) {
        const auto t = gen::text(4096, 2 + round, rng());
        const auto tree = build_text_hierarchy(t);
        const auto idx = TextIndex::from_parts(t, tree, HierarchyOracle());
        for (int k = 0; k < 300; ++k) {
            const std::size_t i = rng() % t.size();
            const std::size_t l = 1 + rng() % std::min<std::size_t>(12, t.size() - i);
            const auto sub = t.substr(i, l);
            CHECK(idx.occurrences(sub) == oracle::naive_occurrences(t, sub));
        }
    }
}

TEST_CASE("single letters behave like colors on the array") {
    const std::string t = "abcabcaab";
    const auto idx = TextIndex::build(t, tau(2));
    for (char x : std::string("abc"))
        for (char y : std::string("abc")) {
            const std::string px(1, x), py(1, y);
            CHECK(idx.query(px, py).distance == oracle::naive_snippet_distance(t, px, py));
        }
}

TEST_CASE("random snippet queries stay within the epsilon window") {
    std::mt19937_64 rng(13);
    for (double eps : {1.0, 0.5, 0.1}) {
        std::size_t bad = 0, total = 0;
        for (int round = 0; round < 4; ++round) {
            const auto t = gen::text(600 + 400 * static_cast<std::size_t>(round), 2 + round % 3, rng());
            HierarchyOptions opt;
            opt.epsilon = eps;
            opt.tau = 4 + round;
            const auto idx = TextIndex::build(t, opt);
            for (int k = 0; k < 150; ++k) {
                auto pick = [&] {
                    const std::size_t i = rng() % t.size();
                    return t.substr(i, 1 + rng() % std::min<std::size_t>(4, t.size() - i));
                };
                const auto p1 = pick();
                const auto p2 = pick();
                const auto ans = idx.query(p1, p2);
                const Distance exact = oracle::naive_snippet_distance(t, p1, p2);
                ++total;
                const auto o1 = oracle::naive_occurrences(t, p1);
                const auto o2 = oracle::naive_occurrences(t, p2);
                const bool wit = std::binary_search(o1.begin(), o1.end(), static_cast<std::size_t>(*ans.witness_a)) &&
                                 std::binary_search(o2.begin(), o2.end(), static_cast<std::size_t>(*ans.witness_b)) &&
                                 std::llabs(*ans.witness_a - *ans.witness_b) <= ans.distance;
                if (!checks::within(exact, ans.distance, eps) || !wit) ++bad;
            }
        }
        CHECK(bad == 0);
        CHECK(total == 600);
    }
}
