#include "doctest.h"

#include "cdok/amcdoch.hpp"
#include "cdok/oracle.hpp"
#include "checks.hpp"
#include "cli/generators.hpp"

using namespace cdok;

namespace {

// Root color 1 over all points, one child color per run of `run` ranks.
ColorHierarchy runs(std::size_t n, std::size_t run) {
    std::vector<Position> pos(n);
    std::vector<Color> leaf(n);
    const std::size_t kids = (n + run - 1) / run;
    std::vector<Color> parent(kids + 2, 1);
    parent[1] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = static_cast<Position>(i) + 1;
        leaf[i] = static_cast<Color>(2 + i / run);
    }
    return ColorHierarchy::from_tree(pos, leaf, parent);
}

}

TEST_CASE("blocks partition the ranks") {
    HierarchyOptions opt;
    opt.tau = 3;
    const auto o = HierarchyOracle::build(runs(9, 2), opt);
    CHECK(o.num_blocks() == 3);
    CHECK(o.block_range(1) == ColorInterval{1, 3});
    CHECK(o.block_range(2) == ColorInterval{4, 6});
    CHECK(o.block_range(3) == ColorInterval{7, 9});
    CHECK(o.block_matrix().cells().size() == 9);
    CHECK(o.dummy_positions().empty());
}

TEST_CASE("the last block is padded with dummy points past 2n") {
    HierarchyOptions opt;
    opt.tau = 3;
    const auto o = HierarchyOracle::build(runs(10, 2), opt);
    CHECK(o.num_blocks() == 4);
    CHECK(o.block_range(4) == ColorInterval{10, 10});
    CHECK(o.dummy_positions() == std::vector<Position>{21, 22});
    CHECK(checks::check_block_matrix(o, opt.epsilon).ok());
}

TEST_CASE("block size is validated") {
    HierarchyOptions opt;
    opt.tau = 11;
    CHECK_THROWS_AS(HierarchyOracle::build(runs(10, 2), opt), InvalidParameter);
    opt.tau = 0;
    CHECK_THROWS_AS(HierarchyOracle::build(runs(10, 2), opt), InvalidParameter);
    opt.tau = std::nullopt;
    CHECK(HierarchyOracle::build(runs(10, 2), opt).tau() == 4);
}

TEST_CASE("invalid hierarchies are rejected") {
    auto h = runs(10, 2);
    h.intervals[2] = {1, 5};
    CHECK_THROWS_AS(HierarchyOracle::build(h, {}), InvalidInput);
}

TEST_CASE("nested colors are at distance zero with a shared witness") {
    HierarchyOptions opt;
    opt.tau = 2;
    const auto o = HierarchyOracle::build(runs(12, 3), opt);
    const auto a = o.query(1, 3);
    CHECK(a.distance == 0);
    CHECK(a.exact);
    CHECK(*a.witness_a == *a.witness_b);
    CHECK(o.hierarchy().intervals[3].contains(4));
    CHECK_THROWS_AS(o.query(1, 9), UnknownColor);
}

TEST_CASE("short colors are answered exactly") {
    HierarchyOptions opt;
    opt.tau = 4;
    const auto o = HierarchyOracle::build(runs(40, 3), opt);
    QueryStats st;
    const auto a = o.query(2, 5, &st);
    CHECK(a.distance == 7);
    CHECK(a.exact);
    CHECK(st.rmq_calls == 0);
    CHECK(st.rnns_calls <= 3);
}

TEST_CASE("long colors combine scans of the ends with the block minimum") {
    HierarchyOptions opt;
    opt.tau = 3;
    // Children of 10 ranks each are long against tau = 3.
    const auto o = HierarchyOracle::build(runs(60, 10), opt);
    const auto p = o.partition(3);
    CHECK(p.split);
    CHECK(p.whole == ColorInterval{11, 20});
    REQUIRE(p.prefix.has_value());
    CHECK(*p.prefix == ColorInterval{11, 12});
    CHECK(p.first_block == 5);
    CHECK(p.last_block == 6);
    REQUIRE(p.suffix.has_value());
    CHECK(*p.suffix == ColorInterval{19, 20});
    QueryStats st;
    const auto a = o.query(3, 6, &st);
    CHECK(a.distance == 21);
    CHECK(st.rmq_calls == 1);
    CHECK(checks::check_partitions(o).ok());
}

TEST_CASE("an interval ending on a block boundary has no suffix") {
    HierarchyOptions opt;
    opt.tau = 5;
    const auto o = HierarchyOracle::build(runs(60, 20), opt);
    const auto p = o.partition(2);
    CHECK(p.whole == ColorInterval{1, 20});
    CHECK_FALSE(p.prefix.has_value());
    CHECK_FALSE(p.suffix.has_value());
    CHECK(p.first_block == 1);
    CHECK(p.last_block == 4);
}

TEST_CASE("block matrix entries bound the true block distances") {
    for (double eps : {1.0, 0.5, 0.1}) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const auto h = gen::hierarchy({800, 40, seed % 2 ? 800 : 500000, seed});
            HierarchyOptions opt;
            opt.epsilon = eps;
            opt.tau = 10 + static_cast<std::int64_t>(seed);
            const auto o = HierarchyOracle::build(h, opt);
            const auto t = checks::check_block_matrix(o, eps);
            INFO(t.first);
            CHECK(t.ok());
        }
    }
}

TEST_CASE("random hierarchies satisfy the query contract") {
    for (double eps : {1.0, 0.5, 0.1}) {
        checks::QueryTally total;
        checks::Tally parts;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto h = gen::hierarchy({300 + 100 * seed, 10 + 3 * seed, seed % 2 ? 2000 : 1000000, seed});
            HierarchyOptions opt;
            opt.epsilon = eps;
            opt.tau = 3 + static_cast<std::int64_t>(seed % 6);
            const auto o = HierarchyOracle::build(h, opt);
            total.merge(checks::check_hierarchy(o, eps));
            parts.merge(checks::check_partitions(o));
        }
        INFO("eps=", eps, " ", total.bounds.first, total.witness.first, total.special.first, total.symmetry.first);
        CHECK(total.ok());
        CHECK(parts.ok());
    }
}

TEST_CASE("exact mode equals brute force") {
    checks::QueryTally total;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto h = gen::hierarchy({50 * seed, 6 * seed, 100000, seed});
        HierarchyOptions opt;
        opt.mode = OracleMode::exact;
        opt.tau = 2 + static_cast<std::int64_t>(seed % 4);
        total.merge(checks::check_hierarchy(HierarchyOracle::build(h, opt), 0.0));
    }
    INFO(total.bounds.first, total.witness.first);
    CHECK(total.ok());
}

TEST_CASE("the winning term is exact when a ragged end holds the closest pair") {
    // Exact whenever the optimum touches a prefix or suffix; otherwise
    // within the window. Both are checked against brute force.
    std::size_t exact_hits = 0, table_hits = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto h = gen::hierarchy({1000, 30, 1000000, seed});
        HierarchyOptions opt;
        opt.epsilon = 0.5;
        opt.tau = 6;
        const auto o = HierarchyOracle::build(h, opt);
        const auto sets = oracle::hierarchy_point_sets(h);
        for (Color c = 1; c <= h.num_colors(); ++c) {
            for (Color d = 1; d <= h.num_colors(); ++d) {
                const auto pc = o.partition(c);
                const auto pd = o.partition(d);
                if (!pc.split || !pd.split) continue;
                if (h.intervals[c].contains(h.intervals[d]) || h.intervals[d].contains(h.intervals[c])) continue;
                // Distances from the ragged ends alone.
                std::vector<Position> ends_c, ends_d;
                for (const auto& part : {pc.prefix, pc.suffix})
                    if (part)
                        for (std::size_t r = part->first; r <= part->last; ++r) ends_c.push_back(h.position_at_rank(r));
                for (const auto& part : {pd.prefix, pd.suffix})
                    if (part)
                        for (std::size_t r = part->first; r <= part->last; ++r) ends_d.push_back(h.position_at_rank(r));
                std::sort(ends_c.begin(), ends_c.end());
                std::sort(ends_d.begin(), ends_d.end());
                const Distance delta = oracle::exact_set_distance(sets[c], sets[d]).distance;
                const Distance via_c = ends_c.empty() ? kInfinity : oracle::exact_set_distance(ends_c, sets[d]).distance;
                const Distance via_d = ends_d.empty() ? kInfinity : oracle::exact_set_distance(sets[c], ends_d).distance;
                const auto ans = o.query(c, d);
                if (std::min(via_c, via_d) == delta) {
                    ++exact_hits;
                    CHECK(ans.distance == delta);
                    CHECK(ans.exact);
                } else {
                    ++table_hits;
                    CHECK(checks::within(delta, ans.distance, 0.5));
                }
            }
        }
    }
    CHECK(exact_hits > 0);
    CHECK(table_hits > 0);
}

TEST_CASE("from_parts reproduces the built oracle") {
    const auto h = gen::hierarchy({500, 25, 40000, 77});
    HierarchyOptions opt;
    opt.tau = 7;
    const auto o = HierarchyOracle::build(h, opt);
    const auto copy = HierarchyOracle::from_parts(h, opt, o.tau(), o.block_matrix().cells(), o.inner_stats());
    for (Color c = 1; c <= h.num_colors(); ++c)
        for (Color d = 1; d <= h.num_colors(); ++d) {
            const auto a = o.query(c, d);
            const auto b = copy.query(c, d);
            CHECK(a.distance == b.distance);
            CHECK(a.witness_a == b.witness_a);
            CHECK(a.witness_b == b.witness_b);
        }
}
