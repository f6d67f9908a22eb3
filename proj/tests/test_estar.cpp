#include "doctest.h"

#include <cmath>

#include "cdok/estar.hpp"
#include "cdok/oracle.hpp"
#include "checks.hpp"
#include "cli/generators.hpp"

using namespace cdok;

namespace {

ColoredPointSet points(std::vector<RawPoint> raw) { return normalize(raw); }

}

TEST_CASE("level bounds") {
    // 1/e = 3 with e = 1/3: (4/3)^3 = 2.37, (4/3)^4 = 3.16.
    CHECK(level_floor(1.0 / 3.0) == 4);
    CHECK(level_floor(1.0) == 1);
    CHECK(level_ceiling(1.0, 8) == 3);
    CHECK(level_ceiling(1.0, 9) == 4);
    CHECK(level_ceiling(0.5, 1) == 0);
    const auto p = EStarParams::make(1.0, 3, 10, 1000);
    CHECK(p.internal_epsilon == doctest::Approx(1.0 / 3.0));
    CHECK(p.ell0 == 4);
    CHECK(p.brute_window() == 50);
    CHECK(p.stretch(4) == static_cast<std::int64_t>(std::floor(std::pow(4.0 / 3.0, 4) * 10)));
    CHECK(p.far_value(4) == static_cast<Distance>(std::ceil(std::pow(4.0 / 3.0, 6) * 10)));
}

TEST_CASE("parameters are validated") {
    CHECK_THROWS_AS(EStarParams::make(0.0, 1, 1, 10), InvalidParameter);
    CHECK_THROWS_AS(EStarParams::make(1.5, 1, 1, 10), InvalidParameter);
    CHECK_THROWS_AS(EStarParams::make(0.5, 0, 1, 10), InvalidParameter);
    CHECK_THROWS_AS(EStarParams::make(0.5, 1, 0, 10), InvalidParameter);
}

TEST_CASE("colors split at the threshold") {
    std::vector<RawPoint> raw;
    for (int k = 0; k < 5; ++k) raw.push_back({k + 1, 1});
    raw.push_back({10, 2});
    for (int k = 0; k < 5; ++k) raw.push_back({20 + k, 3});
    const auto s = points(raw);
    auto split = classify_colors(s, 5);
    CHECK(split.heavy == std::vector<Color>{1, 3});
    CHECK(split.light == std::vector<Color>{2});
    CHECK(classify_colors(s, 1).heavy.size() == 3);
    CHECK(classify_colors(s, static_cast<std::int64_t>(s.size()) + 1).heavy.empty());
}

TEST_CASE("block matrix A marks the block of every point") {
    const auto s = points({{1, 1}, {5, 2}});
    const std::vector<Color> heavy{1, 2};
    const auto a = build_block_matrix_a(s, heavy, 4);
    CHECK(a.bits.rows() == 2);
    CHECK(a.bits.cols() == 2);
    CHECK(a.bits.get(0, 0));
    CHECK_FALSE(a.bits.get(0, 1));
    CHECK_FALSE(a.bits.get(1, 0));
    CHECK(a.bits.get(1, 1));
    CHECK(a.point(1, 1) == 5);

    // A point at exactly W closes the first block.
    const auto edge = points({{1, 1}, {4, 1}, {9, 1}});
    const auto e = build_block_matrix_a(edge, std::vector<Color>{1}, 4);
    CHECK(e.bits.get(0, 0));
    CHECK_FALSE(e.bits.get(0, 1));
    CHECK(e.bits.get(0, 2));
}

TEST_CASE("block matrix B reaches past its block") {
    const auto s = points({{1, 1}, {9, 1}});
    const std::vector<Color> heavy{1};
    // Window of block 1 is [1, 4 + floor(2^1 * 4)] = [1, 12].
    const auto b = build_block_matrix_b(s, heavy, 4, 1, 1.0);
    CHECK(b.bits.get(0, 0));
    CHECK(b.point(0, 0) == 1);
    CHECK(b.bits.get(1, 0));
    CHECK(b.point(1, 0) == 9);
}

TEST_CASE("block matrix B grows with the level and covers A") {
    auto raw = gen::points({gen::Shape::clustered, 400, 12, 20000, 3});
    const auto s = normalize(raw);
    const auto heavy = classify_colors(s, 10).heavy;
    const std::int64_t w = 37;
    const auto a = build_block_matrix_a(s, heavy, w);
    const auto at = a.bits.transposed();
    BitMatrix prev;
    for (int ell = 1; ell <= 12; ++ell) {
        const auto b = build_block_matrix_b(s, heavy, w, ell, 0.3);
        for (std::size_t i = 0; i < b.bits.rows(); ++i)
            for (std::size_t j = 0; j < b.bits.cols(); ++j) {
                if (at.get(i, j)) CHECK(b.bits.get(i, j));
                if (ell > 1 && prev.get(i, j)) CHECK(b.bits.get(i, j));
                if (b.bits.get(i, j)) {
                    // The witness is the first point of the color in the window.
                    const Position p = b.point(i, j);
                    const auto start = static_cast<Position>(i) * w + 1;
                    CHECK(p >= start);
                    const auto pos = s.positions_of(heavy[j]);
                    const auto it = std::lower_bound(pos.begin(), pos.end(), start);
                    CHECK(*it == p);
                }
            }
        prev = b.bits;
    }
}

TEST_CASE("close pairs get exact values and witnesses") {
    const auto s = points({{1, 1}, {3, 2}});
    const auto p = EStarParams::make(1.0, 1, 10, s.universe_size());
    const auto t = construct_estar(s, std::vector<Color>{1, 2}, p);
    const auto& e = t.canonical(0, 1);
    CHECK(e.value == 2);
    CHECK(e.exact);
    CHECK(e.low_point == 1);
    CHECK(e.high_point == 3);
}

TEST_CASE("a shared position gives zero for any epsilon") {
    for (double eps : {1.0, 0.5, 0.1}) {
        std::vector<RawPoint> raw{{500, 1}, {500, 2}, {1, 1}, {100000, 2}};
        const auto s = normalize(raw);
        const auto p = EStarParams::make(eps, 1, 3, s.universe_size());
        const auto t = construct_estar(s, std::vector<Color>{1, 2}, p);
        CHECK(t.canonical(0, 1).value == 0);
    }
}

TEST_CASE("far pairs are filled from the matrix levels") {
    std::vector<RawPoint> raw;
    for (int k = 0; k < 5; ++k) raw.push_back({1 + k, 1});
    for (int k = 0; k < 5; ++k) raw.push_back({5000 + 3 * k, 2});
    for (int k = 0; k < 5; ++k) raw.push_back({90000 + k, 3});
    const auto s = normalize(raw);
    for (double eps : {1.0, 0.5, 0.1}) {
        const auto p = EStarParams::make(eps, 5, 8, s.universe_size());
        const auto tally = checks::check_estar(s, p);
        CHECK(tally.ok());
        CHECK(tally.far_pairs == 3);
        const auto t = construct_estar(s, std::vector<Color>{1, 2, 3}, p);
        CHECK_FALSE(t.canonical(0, 2).exact);
    }
}

TEST_CASE("level invariants and the ratio hold on random builds") {
    checks::EStarTally total;
    std::uint64_t seed = 100;
    for (double eps : {1.0, 0.5, 0.1}) {
        for (auto shape : {gen::Shape::uniform, gen::Shape::clustered, gen::Shape::adversarial_heavy}) {
            for (int round = 0; round < 6; ++round) {
                const std::size_t n = 200 + 150 * static_cast<std::size_t>(round);
                const Position universe = round % 2 ? 200000 : 5000;
                const auto s = normalize(gen::points({shape, n, 30, universe, ++seed}));
                for (std::int64_t w : {std::int64_t{universe > 10000 ? 40 : 1}, std::int64_t{16}, std::int64_t{250}}) {
                    const auto p = EStarParams::make(eps, 8, w, s.universe_size());
                    total.merge(checks::check_estar(s, p));
                }
            }
        }
    }
    INFO(total.monotone.first, total.coverage.first, total.lower_bound.first, total.upper_bound.first);
    INFO(total.base_case.first, total.unique_level.first, total.ratio.first, total.witness.first);
    CHECK(total.ok());
    CHECK(total.far_pairs > 0);
    CHECK(total.ratio.max_ratio > 1.0);
}

TEST_CASE("serial and packed multipliers build the same table") {
    const auto s = normalize(gen::points({gen::Shape::clustered, 800, 20, 100000, 9}));
    const auto heavy = classify_colors(s, 10).heavy;
    const auto p = EStarParams::make(0.5, 10, 20, s.universe_size());
    const SerialMultiplier ser;
    const auto a = construct_estar(s, heavy, p);
    const auto b = construct_estar(s, heavy, p, {}, &ser);
    CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end()));
}

TEST_CASE("tiny universes skip the matrix levels") {
    const auto s = normalize(std::vector<RawPoint>{{1, 1}, {2, 2}, {2, 1}});
    const auto p = EStarParams::make(1.0, 1, 1, s.universe_size());
    CHECK(p.ell0 > p.ell_max);
    int levels = 0;
    const auto t = construct_estar(s, std::vector<Color>{1, 2}, p, [&](int, const BitMatrix&) { ++levels; });
    CHECK(levels == 0);
    CHECK(t.canonical(0, 1).value == 0);
}

TEST_CASE("the exact pass finds every pair within reach and nothing else") {
    for (std::int64_t tau : {std::int64_t{2}, std::int64_t{40}}) {
        const auto s = normalize(gen::points({gen::Shape::uniform, 1500, 60, 30000, 21}));
        const auto heavy = classify_colors(s, tau).heavy;
        const auto p = EStarParams::make(0.5, tau, 40, s.universe_size());
        EStarMatrix t(heavy);
        fill_close_pairs(s, p, t);
        for (std::size_t i = 0; i < heavy.size(); ++i)
            for (std::size_t j = i + 1; j < heavy.size(); ++j) {
                const auto ex = oracle::exact_set_distance(s.positions_of(heavy[i]), s.positions_of(heavy[j]));
                const auto& e = t.canonical(i, j);
                if (ex.distance <= p.brute_window()) {
                    CHECK(e.value == ex.distance);
                } else {
                    CHECK_FALSE(e.finite());
                }
            }
    }
}
