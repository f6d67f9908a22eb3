#include "cdok/rnns.hpp"

#include <algorithm>
#include <bit>

namespace cdok {

RnnsIndex::RnnsIndex(std::vector<Position> values) {
    if (values.empty()) {
        throw InvalidInput("range nearest-neighbor index over an empty array");
    }
    const std::size_t n = values.size();
    levels_.push_back(std::move(values));
    for (std::size_t width = 1; width < n; width *= 2) {
        const auto& prev = levels_.back();
        std::vector<Position> next(n);
        const auto blocks = static_cast<std::int64_t>((n + 2 * width - 1) / (2 * width));
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * 2 * width;
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::merge(prev.begin() + lo, prev.begin() + mid, prev.begin() + mid, prev.begin() + hi,
                       next.begin() + lo);
        }
        levels_.push_back(std::move(next));
    }
}

Neighbor RnnsIndex::range_nearest(std::size_t i, std::size_t j, Position q) const {
    const std::size_t n = size();
    if (i < 1 || i > j || j > n) {
        throw InvalidRange("rank range [" + std::to_string(i) + ", " + std::to_string(j) + "] is invalid for " +
                           std::to_string(n) + " entries");
    }
    Neighbor best{0, kInfinity};
    auto consider = [&](Position v) {
        const Distance d = v >= q ? v - q : q - v;
        if (d < best.distance || (d == best.distance && v < best.point)) {
            best = {v, d};
        }
    };
    std::size_t lo = i - 1;
    const std::size_t hi = j;
    while (lo < hi) {
        // largest aligned block starting at lo that fits in [lo, hi)
        std::size_t level = lo == 0 ? levels_.size() - 1 : static_cast<std::size_t>(std::countr_zero(lo));
        level = std::min(level, levels_.size() - 1);
        while ((std::size_t{1} << level) > hi - lo) {
            --level;
        }
        const std::size_t width = std::size_t{1} << level;
        const auto& arr = levels_[level];
        auto first = arr.begin() + lo;
        auto last = arr.begin() + lo + width;
        auto it = std::lower_bound(first, last, q);
        if (it != last) {
            consider(*it);
        }
        if (it != first) {
            consider(*(it - 1));
        }
        lo += width;
    }
    return best;
}

}
