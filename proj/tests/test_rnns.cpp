#include "doctest.h"

#include <cstdlib>
#include <random>

#include "cdok/rnns.hpp"

using namespace cdok;

namespace {

Neighbor scan(const std::vector<Position>& a, std::size_t i, std::size_t j, Position q) {
    Neighbor best{0, kInfinity};
    for (std::size_t r = i; r <= j; ++r) {
        const Distance d = std::llabs(a[r - 1] - q);
        if (d < best.distance || (d == best.distance && a[r - 1] < best.point)) best = {a[r - 1], d};
    }
    return best;
}

}

TEST_CASE("range nearest on small arrays") {
    const RnnsIndex idx({4, 1, 3, 9});
    CHECK(idx.range_nearest(2, 4, 5) == Neighbor{3, 2});
    CHECK(idx.range_nearest(1, 1, 100) == Neighbor{4, 96});
    CHECK(idx.range_nearest(1, 4, 3) == Neighbor{3, 0});
    CHECK(RnnsIndex({7}).range_nearest(1, 1, 0) == Neighbor{7, 7});
    CHECK(RnnsIndex({5, 5, 5}).range_nearest(2, 3, 6) == Neighbor{5, 1});
}

TEST_CASE("range nearest rejects bad ranges and empty arrays") {
    const RnnsIndex idx({4, 1, 3});
    CHECK_THROWS_AS(idx.range_nearest(2, 1, 0), InvalidRange);
    CHECK_THROWS_AS(idx.range_nearest(0, 1, 0), InvalidRange);
    CHECK_THROWS_AS(idx.range_nearest(1, 4, 0), InvalidRange);
    CHECK_THROWS_AS(RnnsIndex(std::vector<Position>{}), InvalidInput);
}

TEST_CASE("every range of arrays up to 512 matches a scan") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1, 2, 3, 5, 8, 13, 31, 64, 100, 512}) {
        std::vector<Position> a(n);
        for (auto& v : a) v = static_cast<Position>(rng() % (2 * n + 1));
        const RnnsIndex idx(a);
        for (std::size_t i = 1; i <= n; ++i) {
            const auto q = static_cast<Position>(rng() % (2 * n + 3)) - 1;
            // Grow the range one element at a time so the reference stays linear.
            Neighbor best{0, kInfinity};
            for (std::size_t j = i; j <= n; ++j) {
                const Distance d = std::llabs(a[j - 1] - q);
                if (d < best.distance || (d == best.distance && a[j - 1] < best.point)) best = {a[j - 1], d};
                const Neighbor got = idx.range_nearest(i, j, q);
                if (!(got == best)) {
                    FAIL_CHECK("mismatch at n=" << n << " [" << i << "," << j << "] q=" << q);
                }
            }
        }
    }
}

TEST_CASE("random ranges of arrays up to 10^4 match a scan") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + rng() % 10000;
        std::vector<Position> a(n);
        for (auto& v : a) v = static_cast<Position>(rng() % 100000);
        const RnnsIndex idx(a);
        for (int k = 0; k < 200; ++k) {
            std::size_t i = 1 + rng() % n, j = 1 + rng() % n;
            if (i > j) std::swap(i, j);
            const auto q = static_cast<Position>(rng() % 100000);
            CHECK(idx.range_nearest(i, j, q) == scan(a, i, j, q));
        }
        CHECK(idx.value_at(1) == a[0]);
        CHECK(idx.value_at(n) == a[n - 1]);
    }
}
