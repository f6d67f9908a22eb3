#include "cdok/estar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <omp.h>

namespace cdok {

namespace {

// Slack for floating-point powers that should land on an integer.
constexpr long double kRelSlack = 1e-12L;

long double grow(double epsilon, long double exponent) {
    return std::pow(1.0L + static_cast<long double>(epsilon), exponent);
}

}

int level_floor(double epsilon) {
    const long double e = epsilon;
    int ell = static_cast<int>(std::floor(std::log(1.0L / e) / std::log1p(e))) + 1;
    // smallest ell with (1+e)^ell > 1/e
    while (ell > 0 && grow(epsilon, ell - 1) * e > 1.0L) {
        --ell;
    }
    while (grow(epsilon, ell) * e <= 1.0L) {
        ++ell;
    }
    return ell;
}

int level_ceiling(double epsilon, Position max_s) {
    if (max_s <= 1) {
        return 0;
    }
    const long double target = static_cast<long double>(max_s);
    int ell = static_cast<int>(std::ceil(std::log(target) / std::log1p(static_cast<long double>(epsilon))));
    while (ell > 0 && grow(epsilon, ell - 1) >= target) {
        --ell;
    }
    while (grow(epsilon, ell) < target) {
        ++ell;
    }
    return ell;
}

EStarParams EStarParams::make(double epsilon, std::int64_t tau, std::int64_t w, Position max_s) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw InvalidParameter("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    }
    if (tau < 1) {
        throw InvalidParameter("tau must be at least 1");
    }
    if (w < 1) {
        throw InvalidParameter("block width must be at least 1");
    }
    EStarParams p;
    p.epsilon = epsilon;
    p.internal_epsilon = epsilon / 3.0;
    p.tau = tau;
    p.w = w;
    p.ell0 = level_floor(p.internal_epsilon);
    p.ell_max = level_ceiling(p.internal_epsilon, max_s);
    return p;
}

std::int64_t EStarParams::brute_window() const {
    const long double e = internal_epsilon;
    const long double x = (1.0L + 2.0L * e) / e * static_cast<long double>(w);
    return static_cast<std::int64_t>(std::floor(x * (1.0L + kRelSlack)));
}

std::int64_t EStarParams::stretch(int ell) const {
    const long double x = grow(internal_epsilon, ell) * static_cast<long double>(w);
    return static_cast<std::int64_t>(std::floor(x * (1.0L + kRelSlack)));
}

Distance EStarParams::far_value(int ell) const {
    const long double x = grow(internal_epsilon, ell + 2) * static_cast<long double>(w);
    return static_cast<Distance>(std::ceil(x));
}

HeavySplit classify_colors(const ColoredPointSet& s, std::int64_t tau) {
    HeavySplit split;
    for (Color c = 1; c <= s.num_colors(); ++c) {
        if (static_cast<std::int64_t>(s.positions_of(c).size()) >= tau) {
            split.heavy.push_back(c);
        } else {
            split.light.push_back(c);
        }
    }
    return split;
}

std::size_t block_count(const ColoredPointSet& s, std::int64_t w) {
    return static_cast<std::size_t>((s.universe_size() + w - 1) / w);
}

BlockMatrix build_block_matrix_a(const ColoredPointSet& s, std::span<const Color> heavy, std::int64_t w) {
    const std::size_t blocks = block_count(s, w);
    BlockMatrix m{BitMatrix(heavy.size(), blocks), std::vector<Position>(heavy.size() * blocks, 0)};
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        for (Position p : s.positions_of(heavy[i])) {
            const auto j = static_cast<std::size_t>((p - 1) / w);
            if (!m.bits.get(i, j)) {
                m.bits.set(i, j);
                m.points[i * blocks + j] = p;
            }
        }
    }
    return m;
}

BlockMatrix build_block_matrix_b(const ColoredPointSet& s, std::span<const Color> heavy, std::int64_t w, int ell,
                                 double epsilon) {
    const std::size_t blocks = block_count(s, w);
    const std::int64_t stretch =
        static_cast<std::int64_t>(std::floor(grow(epsilon, ell) * static_cast<long double>(w) * (1.0L + kRelSlack)));
    BlockMatrix m{BitMatrix(blocks, heavy.size()), std::vector<Position>(heavy.size() * blocks, 0)};
    // Columns share packed words of a row; threads fill disjoint rows of the
    // transpose instead.
    BitMatrix columns(heavy.size(), blocks);
    const auto h = static_cast<std::int64_t>(heavy.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t jj = 0; jj < h; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const auto pts = s.positions_of(heavy[j]);
        auto it = pts.begin();
        for (std::size_t i = 0; i < blocks; ++i) {
            const Position start = static_cast<Position>(i) * w + 1;
            const Position end = static_cast<Position>(i + 1) * w + stretch;
            while (it != pts.end() && *it < start) {
                ++it;
            }
            if (it == pts.end()) {
                break;
            }
            if (*it <= end) {
                columns.set(j, i);
                m.points[i * heavy.size() + j] = *it;
            }
        }
    }
    m.bits = columns.transposed();
    return m;
}

EStarMatrix::EStarMatrix(std::vector<Color> heavy) : heavy_(std::move(heavy)) {
    Color max_color = 0;
    for (Color c : heavy_) {
        max_color = std::max(max_color, c);
    }
    index_of_.assign(static_cast<std::size_t>(max_color) + 1, 0);
    for (std::size_t i = 0; i < heavy_.size(); ++i) {
        index_of_[heavy_[i]] = static_cast<std::uint32_t>(i + 1);
    }
    entries_.assign(heavy_.size() * (heavy_.size() + 1) / 2, EStarEntry{});
}

std::optional<std::size_t> EStarMatrix::heavy_index(Color c) const {
    if (c >= index_of_.size() || index_of_[c] == 0) {
        return std::nullopt;
    }
    return index_of_[c] - 1;
}

EStarMatrix::Oriented EStarMatrix::lookup(std::size_t i, std::size_t j) const {
    const auto& e = entries_[slot(i, j)];
    if (i <= j) {
        return {e.value, e.low_point, e.high_point, e.exact};
    }
    return {e.value, e.high_point, e.low_point, e.exact};
}

namespace {

bool better_entry(const EStarEntry& a, const EStarEntry& b) {
    return std::make_tuple(a.value, !a.exact, a.low_point, a.high_point) <
           std::make_tuple(b.value, !b.exact, b.low_point, b.high_point);
}

}

void EStarMatrix::offer(std::size_t i, std::size_t j, const EStarEntry& e) {
    auto& cur = entries_[slot(i, j)];
    if (better_entry(e, cur)) {
        cur = e;
    }
}

namespace {

inline void offer_pair(EStarMatrix& table, std::size_t hi, Position pi, std::size_t hj, Position pj) {
    const Distance d = pi > pj ? pi - pj : pj - pi;
    if (hi < hj) {
        table.offer(hi, hj, {d, pi, pj, true});
    } else {
        table.offer(hj, hi, {d, pj, pi, true});
    }
}

void merge_into(EStarMatrix& dst, const EStarMatrix& src) {
    const std::size_t h = dst.size();
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i; j < h; ++j) {
            const auto& e = src.canonical(i, j);
            if (e.finite()) {
                dst.offer(i, j, e);
            }
        }
    }
}

}

void fill_close_pairs(const ColoredPointSet& s, const EStarParams& params, EStarMatrix& table) {
    const auto pts = s.points();
    const std::size_t n = pts.size();
    const std::size_t h = table.size();
    if (h < 2) {
        return;
    }
    const std::int64_t reach = params.brute_window();
    constexpr auto kLight = static_cast<std::size_t>(-1);
    std::vector<std::size_t> heavy_of(static_cast<std::size_t>(s.num_colors()) + 1, kLight);
    for (std::size_t i = 0; i < h; ++i) {
        heavy_of[table.heavy_colors()[i]] = i;
    }

    // Two equivalent enumerations of every pair within reach: scanning each
    // point's window, or sweeping right to left with the next occurrence of
    // every heavy color. Both see every pair that attains a close distance,
    // so they produce the same table; pick the cheaper one.
    std::size_t window_work = 0;
    for (std::size_t t = 0, u = 0; t < n; ++t) {
        u = std::max(u, t + 1);
        while (u < n && pts[u].position - pts[t].position <= reach) {
            ++u;
        }
        window_work += u - t - 1;
    }

    if (window_work <= n * h) {
        const auto count = static_cast<std::int64_t>(n);
        const bool parallel = h <= 512 && omp_get_max_threads() > 1;
#pragma omp parallel if (parallel)
        {
            EStarMatrix local(std::vector<Color>(table.heavy_colors().begin(), table.heavy_colors().end()));
#pragma omp for schedule(dynamic, 256)
            for (std::int64_t tt = 0; tt < count; ++tt) {
                const auto t = static_cast<std::size_t>(tt);
                const std::size_t hi = heavy_of[pts[t].color];
                if (hi == kLight) {
                    continue;
                }
                for (std::size_t u = t + 1; u < n && pts[u].position - pts[t].position <= reach; ++u) {
                    const std::size_t hj = heavy_of[pts[u].color];
                    if (hj != kLight && hj != hi) {
                        offer_pair(local, hi, pts[t].position, hj, pts[u].position);
                    }
                }
            }
#pragma omp critical(cdok_close_pairs_merge)
            merge_into(table, local);
        }
        return;
    }

    std::vector<Position> next(h, kInfinity);
    for (std::size_t t = n; t-- > 0;) {
        const std::size_t hi = heavy_of[pts[t].color];
        if (hi == kLight) {
            continue;
        }
        const Position p = pts[t].position;
        for (std::size_t hj = 0; hj < h; ++hj) {
            if (hj != hi && next[hj] != kInfinity && next[hj] - p <= reach) {
                offer_pair(table, hi, p, hj, next[hj]);
            }
        }
        next[hi] = p;
    }
}

EStarMatrix construct_estar(const ColoredPointSet& s, std::span<const Color> heavy, const EStarParams& params,
                            const LevelObserver& observer, const BoolMultiplier* multiplier) {
    PackedMultiplier packed;
    const BoolMultiplier& mult = multiplier ? *multiplier : packed;

    EStarMatrix table(std::vector<Color>(heavy.begin(), heavy.end()));
    const std::size_t h = table.size();
    for (std::size_t i = 0; i < h; ++i) {
        const Position p = s.positions_of(heavy[i]).front();
        table.canonical(i, i) = {0, p, p, true};
    }
    if (h < 2) {
        return table;
    }
    fill_close_pairs(s, params, table);

    if (params.ell0 > params.ell_max) {
        // Tiny universe: the exact pass already reaches every pair.
        if (params.brute_window() < s.universe_size() - 1) {
            throw std::logic_error("E* levels are empty but the exact pass does not cover the universe");
        }
    } else {
        const BlockMatrix a = build_block_matrix_a(s, heavy, params.w);
        const double e = params.internal_epsilon;
        BitMatrix prev = mult.multiply(a.bits, build_block_matrix_b(s, heavy, params.w, params.ell0, e).bits);
        if (observer) {
            observer(params.ell0, prev);
        }
        for (int ell = params.ell0; ell < params.ell_max; ++ell) {
            const BlockMatrix b = build_block_matrix_b(s, heavy, params.w, ell + 1, e);
            const WitnessedProduct next = mult.multiply_with_witness(a.bits, b.bits);
            if (observer) {
                observer(ell + 1, next.product);
            }
            const Distance value = params.far_value(ell);
            const auto rows = static_cast<std::int64_t>(h);
#pragma omp parallel for schedule(dynamic, 4)
            for (std::int64_t ii = 0; ii < rows; ++ii) {
                const auto i = static_cast<std::size_t>(ii);
                for (std::size_t j = i + 1; j < h; ++j) {
                    if (prev.get(i, j) || prev.get(j, i)) {
                        continue;
                    }
                    const bool forward = next.product.get(i, j);
                    if (!forward && !next.product.get(j, i)) {
                        continue;
                    }
                    EStarEntry entry{value, 0, 0, false};
                    if (forward) {
                        const std::size_t k = *next.witness.at(i, j);
                        entry.low_point = a.point(i, k);
                        entry.high_point = b.point(k, j);
                    } else {
                        const std::size_t k = *next.witness.at(j, i);
                        entry.high_point = a.point(j, k);
                        entry.low_point = b.point(k, i);
                    }
                    table.offer(i, j, entry);
                }
            }
            prev = next.product;
        }
    }

    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i + 1; j < h; ++j) {
            if (!table.canonical(i, j).finite()) {
                throw std::logic_error("E* left heavy pair (" + std::to_string(heavy[i]) + ", " +
                                       std::to_string(heavy[j]) + ") without a value");
            }
        }
    }
    return table;
}

}
