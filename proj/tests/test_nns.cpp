#include "doctest.h"

#include <cstdlib>
#include <random>

#include "cdok/nns.hpp"

using namespace cdok;

TEST_CASE("build sorts and drops duplicates") {
    const NnsIndex idx({5, 1, 9});
    CHECK(std::vector<Position>(idx.positions().begin(), idx.positions().end()) == std::vector<Position>{1, 5, 9});
    const NnsIndex single({3});
    CHECK(single.size() == 1);
    const NnsIndex dup({2, 2, 7});
    CHECK(dup.size() == 2);
    CHECK(dup.positions()[0] == 2);
    CHECK(dup.positions()[1] == 7);
}

TEST_CASE("build rejects an empty set") {
    CHECK_THROWS_AS(NnsIndex(std::vector<Position>{}), InvalidInput);
}

TEST_CASE("nearest breaks ties toward the smaller point") {
    const NnsIndex idx({1, 5, 9});
    CHECK(idx.nearest(7) == Neighbor{5, 2});
    CHECK(idx.nearest(5) == Neighbor{5, 0});
    CHECK(idx.nearest(100) == Neighbor{9, 91});
    CHECK(idx.nearest(-3) == Neighbor{1, 4});
    CHECK(idx.nearest(3) == Neighbor{1, 2});
}

TEST_CASE("nearest agrees with a linear scan") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        const std::size_t m = 1 + rng() % (round < 100 ? 50 : 10000);
        std::vector<Position> pts(m);
        for (auto& p : pts) p = static_cast<Position>(rng() % 20000);
        const NnsIndex idx(pts);
        for (int q = 0; q < 50; ++q) {
            const auto x = static_cast<Position>(rng() % 22000) - 1000;
            Distance best = kInfinity;
            Position arg = 0;
            for (Position p : pts) {
                const Distance d = std::llabs(p - x);
                if (d < best || (d == best && p < arg)) {
                    best = d;
                    arg = p;
                }
            }
            const Neighbor got = idx.nearest(x);
            CHECK(got.distance == best);
            CHECK(got.point == arg);
        }
    }
}
