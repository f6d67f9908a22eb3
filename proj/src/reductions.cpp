#include "cdok/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cdok/acdo.hpp"

namespace cdok {

MinPlusInstance MinPlusInstance::make(IntMatrix a, IntMatrix b, std::int64_t m) {
    if (a.rows() == 0 || a.cols() == 0 || b.cols() == 0) {
        throw InvalidInput("min-plus matrices must be non-empty");
    }
    if (a.cols() != b.rows()) {
        throw DimensionError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    }
    if (m < 1) {
        throw InvalidInput("entry bound must be positive");
    }
    bool zero = false;
    for (const IntMatrix* x : {&a, &b}) {
        for (auto v : x->data()) {
            if (v < 0 || v > m) {
                throw InvalidInput("entry " + std::to_string(v) + " outside [0, " + std::to_string(m) + "]");
            }
            zero = zero || v == 0;
        }
    }
    MinPlusInstance inst;
    inst.a = std::move(a);
    inst.b = std::move(b);
    inst.m = m;
    inst.offset = zero ? 1 : 0;
    return inst;
}

IntMatrix minplus_direct(const MinPlusInstance& inst) {
    IntMatrix d(inst.rows(), inst.cols(), kInfinity);
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t k = 0; k < inst.inner(); ++k) {
            const std::int64_t aik = inst.a.at(i, k);
            for (std::size_t j = 0; j < inst.cols(); ++j) {
                d.at(i, j) = std::min(d.at(i, j), aik + inst.b.at(k, j));
            }
        }
    }
    return d;
}

namespace {

struct PlacedPoint {
    Position position;
    Color color;
};

// Construction points for entries a + row_off[i], b + col_off[j] under bound m.
std::vector<PlacedPoint> place(const MinPlusInstance& inst, std::int64_t m, std::span<const std::int64_t> row_off,
                               std::span<const std::int64_t> col_off) {
    std::vector<PlacedPoint> pts;
    pts.reserve(inst.inner() * (inst.rows() + inst.cols()));
    const auto rows = static_cast<Color>(inst.rows());
    for (std::size_t k = 0; k < inst.inner(); ++k) {
        const std::int64_t base = 9 * m * static_cast<std::int64_t>(k + 1);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            const std::int64_t v = inst.a_at(i, k) + (row_off.empty() ? 0 : row_off[i]);
            pts.push_back({(m - v) + base, static_cast<Color>(i + 1)});
        }
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            const std::int64_t v = inst.b_at(k, j) + (col_off.empty() ? 0 : col_off[j]);
            pts.push_back({v + 3 * m + base, rows + static_cast<Color>(j + 1)});
        }
    }
    std::sort(pts.begin(), pts.end(), [](const PlacedPoint& x, const PlacedPoint& y) {
        return x.position != y.position ? x.position < y.position : x.color < y.color;
    });
    return pts;
}

}

std::vector<MultiColorPoint> mcdo_points(const MinPlusInstance& inst) {
    const auto pts = place(inst, inst.bound(), {}, {});
    std::vector<MultiColorPoint> out;
    for (const auto& p : pts) {
        if (out.empty() || out.back().position != p.position) {
            out.push_back({p.position, {}});
        }
        auto& colors = out.back().colors;
        if (colors.empty() || colors.back() != p.color) {
            colors.push_back(p.color);
        }
    }
    return out;
}

MultiColorOracle::MultiColorOracle(std::span<const MultiColorPoint> points, Color num_colors)
    : by_color_(num_colors), indexes_(num_colors) {
    for (const auto& p : points) {
        for (Color c : p.colors) {
            if (c < 1 || c > num_colors) {
                throw InvalidInput("point color " + std::to_string(c) + " out of range");
            }
            by_color_[c - 1].push_back(p.position);
        }
    }
    for (Color c = 0; c < num_colors; ++c) {
        if (!by_color_[c].empty()) {
            indexes_[c].emplace(by_color_[c]);
            const auto& sorted = indexes_[c]->positions();
            by_color_[c].assign(sorted.begin(), sorted.end());
        }
    }
}

DistanceAnswer MultiColorOracle::query(Color c, Color other) const {
    if (c < 1 || c > num_colors()) throw UnknownColor(c);
    if (other < 1 || other > num_colors()) throw UnknownColor(other);
    DistanceAnswer best;
    best.exact = true;
    if (!indexes_[c - 1] || !indexes_[other - 1]) {
        return best;
    }
    const bool scan_c = by_color_[c - 1].size() <= by_color_[other - 1].size();
    const auto& scanned = by_color_[(scan_c ? c : other) - 1];
    const NnsIndex& index = *indexes_[(scan_c ? other : c) - 1];
    for (Position p : scanned) {
        const Neighbor nb = index.nearest(p);
        if (nb.distance < best.distance) {
            best.distance = nb.distance;
            best.witness_a = scan_c ? p : nb.point;
            best.witness_b = scan_c ? nb.point : p;
            if (nb.distance == 0) break;
        }
    }
    return best;
}

IntMatrix reduce_to_mcdo(const MinPlusInstance& inst) {
    const auto points = mcdo_points(inst);
    const auto rows = static_cast<Color>(inst.rows());
    const MultiColorOracle oracle(points, rows + static_cast<Color>(inst.cols()));
    const std::int64_t m = inst.bound();
    IntMatrix d(inst.rows(), inst.cols());
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        for (std::size_t j = 0; j < inst.cols(); ++j) {
            const auto ans = oracle.query(static_cast<Color>(i + 1), rows + static_cast<Color>(j + 1));
            d.at(i, j) = ans.distance - 2 * m - 2 * inst.offset;
        }
    }
    return d;
}

int auto_alpha(std::size_t rows, std::size_t cols, double c) {
    const double x = c * std::log(static_cast<double>(rows) * static_cast<double>(cols));
    return std::max(1, static_cast<int>(std::ceil(x - 1e-9)));
}

namespace {

RepetitionTrace run_repetition(const MinPlusInstance& inst, int rep, std::uint64_t seed) {
    const std::size_t rows = inst.rows();
    const std::size_t cols = inst.cols();
    RepetitionTrace tr;
    tr.repetition = rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(1, static_cast<std::int64_t>(rows));
    tr.row_offsets.resize(rows);
    tr.col_offsets.resize(cols);
    for (auto& r : tr.row_offsets) r = pick(rng);
    for (auto& s : tr.col_offsets) s = pick(rng);

    const std::int64_t m = inst.bound() + static_cast<std::int64_t>(rows);
    const auto pts = place(inst, m, tr.row_offsets, tr.col_offsets);
    std::vector<RawPoint> kept;
    for (std::size_t x = 0; x < pts.size();) {
        std::size_t y = x;
        while (y < pts.size() && pts[y].position == pts[x].position) ++y;
        if (y - x == 1) {
            kept.push_back({pts[x].position, static_cast<std::int64_t>(pts[x].color)});
        } else {
            tr.removed_points += y - x;
        }
        x = y;
    }
    tr.estimate = IntMatrix(rows, cols, kInfinity);
    if (kept.empty()) {
        return tr;
    }

    CdoOptions opts;
    opts.mode = OracleMode::exact;
    const CdoOracle oracle = CdoOracle::build(normalize(kept), opts);
    tr.survivors = std::move(kept);
    const auto& s = oracle.point_set();
    for (std::size_t i = 0; i < rows; ++i) {
        const auto ci = s.dense_color(static_cast<std::int64_t>(i + 1));
        if (!ci) continue;
        for (std::size_t j = 0; j < cols; ++j) {
            const auto cj = s.dense_color(static_cast<std::int64_t>(rows + j + 1));
            if (!cj) continue;
            const Distance delta = oracle.query(*ci, *cj).distance;
            tr.estimate.at(i, j) =
                delta - 2 * m - tr.row_offsets[i] - tr.col_offsets[j] - 2 * inst.offset;
        }
    }
    return tr;
}

}

RandomizedProduct reduce_to_cdo_randomized(const MinPlusInstance& inst, int alpha, std::uint64_t seed,
                                           const RepetitionObserver& observer) {
    if (alpha < 0) {
        throw InvalidParameter("repetition count must be non-negative");
    }
    RandomizedProduct out;
    out.repetitions = alpha == 0 ? auto_alpha(inst.rows(), inst.cols()) : alpha;
    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(out.repetitions));
    for (auto& s : seeds) s = master();

    std::vector<RepetitionTrace> traces(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(seeds.size()); ++r) {
        traces[static_cast<std::size_t>(r)] =
            run_repetition(inst, static_cast<int>(r) + 1, seeds[static_cast<std::size_t>(r)]);
    }

    out.d = IntMatrix(inst.rows(), inst.cols(), kInfinity);
    for (const auto& tr : traces) {
        if (observer) observer(tr);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            for (std::size_t j = 0; j < inst.cols(); ++j) {
                out.d.at(i, j) = std::min(out.d.at(i, j), tr.estimate.at(i, j));
            }
        }
    }
    for (auto v : out.d.data()) {
        if (v == kInfinity) ++out.unresolved;
    }
    return out;
}

}
