#include "cdok/amcdoch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cdok {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

struct Candidate {
    Distance value = kInfinity;
    Position a = 0;  // point of the first color
    Position b = 0;  // point of the second color
    bool exact = true;

    // Smaller value wins; on ties an exact term beats a table term.
    bool beats(const Candidate& other) const {
        if (value != other.value) return value < other.value;
        return exact && !other.exact;
    }
};

}

ColorInterval HierarchyOracle::block_range(std::size_t i) const {
    const std::size_t n = hierarchy_.num_points();
    const std::size_t t = static_cast<std::size_t>(tau_);
    return {(i - 1) * t + 1, std::min(i * t, n)};
}

void HierarchyOracle::build_indexes(std::vector<BlockDistanceCell> cells) {
    by_rank_ = hierarchy_.preorder_positions();
    rnns_ = RnnsIndex(by_rank_);
    rmq_ = Rmq2d<WitnessPair>(blocks_, blocks_, std::move(cells));

    const std::size_t n = hierarchy_.num_points();
    const std::size_t t = static_cast<std::size_t>(tau_);
    const Position top = *std::max_element(by_rank_.begin(), by_rank_.end());
    const Position base = 2 * std::max<Position>(static_cast<Position>(n), top);
    dummies_.clear();
    for (std::size_t k = 1; k + n <= blocks_ * t; ++k) {
        dummies_.push_back(base + static_cast<Position>(k));
    }
}

HierarchyOracle HierarchyOracle::build(ColorHierarchy h, const HierarchyOptions& options) {
    if (auto v = validate_hierarchy(h)) {
        throw InvalidInput(v->message);
    }
    const std::size_t n = h.num_points();
    for (Position p : h.positions) {
        if (p < 1) {
            throw InvalidInput("hierarchy positions must be at least 1, got " + std::to_string(p));
        }
    }
    const std::int64_t tau = options.tau.value_or(default_tau(n, 0.5));
    if (tau < 1 || static_cast<std::size_t>(tau) > n) {
        throw InvalidParameter("block size tau must lie in [1, " + std::to_string(n) + "], got " +
                               std::to_string(tau));
    }
    if (options.mode == OracleMode::approximate && !(options.epsilon > 0.0 && options.epsilon <= 1.0)) {
        throw InvalidParameter("epsilon must lie in (0, 1]");
    }

    HierarchyOracle o;
    o.hierarchy_ = std::move(h);
    o.tau_ = tau;
    o.epsilon_ = options.mode == OracleMode::exact ? 0.0 : options.epsilon;
    o.omega_ = options.omega;
    o.mode_ = options.mode;
    const std::size_t t = static_cast<std::size_t>(tau);
    o.blocks_ = ceil_div(n, t);

    // Block-recolored points, last block padded with dummies far to the right.
    const std::vector<Position> ranks = o.hierarchy_.preorder_positions();
    const Position top = *std::max_element(ranks.begin(), ranks.end());
    const Position base = 2 * std::max<Position>(static_cast<Position>(n), top);
    std::vector<RawPoint> raw;
    raw.reserve(o.blocks_ * t);
    for (std::size_t r = 1; r <= n; ++r) {
        raw.push_back({ranks[r - 1], static_cast<std::int64_t>(ceil_div(r, t))});
    }
    for (std::size_t k = 1; k + n <= o.blocks_ * t; ++k) {
        raw.push_back({base + static_cast<Position>(k), static_cast<std::int64_t>(o.blocks_)});
    }
    ColoredPointSet blocks = normalize(raw);

    // Repeated positions inside a block collapse, so the smallest block decides
    // the threshold that keeps every block heavy.
    std::int64_t inner_tau = static_cast<std::int64_t>(t);
    for (Color c = 1; c <= blocks.num_colors(); ++c) {
        inner_tau = std::min<std::int64_t>(inner_tau, static_cast<std::int64_t>(blocks.positions_of(c).size()));
    }
    CdoOptions inner_opts;
    inner_opts.epsilon = options.mode == OracleMode::exact ? 1.0 : options.epsilon;
    inner_opts.tau = inner_tau;
    inner_opts.omega = options.omega;
    inner_opts.mode = options.mode;
    const CdoOracle inner = CdoOracle::build(std::move(blocks), inner_opts);
    if (inner.heavy_count() != o.blocks_) {
        throw std::logic_error("block colors of the inner oracle are not all heavy");
    }
    o.inner_ = {inner.point_set().size(), inner.tau(), inner.block_width(), inner.heavy_count(),
                inner.params().ell0, inner.params().ell_max};

    o.by_rank_ = ranks;
    o.rnns_ = RnnsIndex(ranks);

    const std::size_t b = o.blocks_;
    std::vector<BlockDistanceCell> cells(b * b);
    const auto rows = static_cast<std::int64_t>(b);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii) + 1;
        for (std::size_t j = 1; j <= b; ++j) {
            const DistanceAnswer ans = inner.query(static_cast<Color>(i), static_cast<Color>(j));
            BlockDistanceCell cell{ans.distance, {*ans.witness_a, *ans.witness_b}};
            if (cell.payload.a > top || cell.payload.b > top) {
                // A table witness landed on a dummy point: replace the cell by
                // the exact distance between the real points of both blocks.
                const ColorInterval bi = o.block_range(i);
                const ColorInterval bj = o.block_range(j);
                Candidate best;
                for (std::size_t r = bi.first; r <= bi.last; ++r) {
                    const Neighbor nb = o.rnns_.range_nearest(bj.first, bj.last, ranks[r - 1]);
                    if (nb.distance < best.value) {
                        best = {nb.distance, ranks[r - 1], nb.point, true};
                    }
                }
                cell = {best.value, {best.a, best.b}};
            }
            cells[(i - 1) * b + (j - 1)] = cell;
        }
    }
    o.build_indexes(std::move(cells));
    return o;
}

HierarchyOracle HierarchyOracle::from_parts(ColorHierarchy h, const HierarchyOptions& resolved, std::int64_t tau,
                                            std::vector<BlockDistanceCell> block_cells, InnerOracleStats inner) {
    HierarchyOracle o;
    o.hierarchy_ = std::move(h);
    o.tau_ = tau;
    o.epsilon_ = resolved.epsilon;
    o.omega_ = resolved.omega;
    o.mode_ = resolved.mode;
    o.inner_ = inner;
    const std::size_t n = o.hierarchy_.num_points();
    if (tau < 1 || static_cast<std::size_t>(tau) > n) {
        throw InvalidInput("stored block size is out of range");
    }
    o.blocks_ = ceil_div(n, static_cast<std::size_t>(tau));
    if (block_cells.size() != o.blocks_ * o.blocks_) {
        throw InvalidInput("stored block matrix has the wrong size");
    }
    o.build_indexes(std::move(block_cells));
    return o;
}

ColorPartition HierarchyOracle::partition(Color c) const {
    if (!hierarchy_.has_color(c)) {
        throw UnknownColor(c);
    }
    const std::size_t t = static_cast<std::size_t>(tau_);
    ColorPartition p;
    p.whole = hierarchy_.intervals[c];
    const std::size_t x = p.whole.first;
    const std::size_t y = p.whole.last;
    if (y - x < 2 * t) {
        return p;
    }
    p.split = true;
    p.first_block = ceil_div(x - 1, t) + 1;
    p.last_block = y / t;
    const std::size_t prefix_end = (p.first_block - 1) * t;
    if (prefix_end >= x) {
        p.prefix = ColorInterval{x, prefix_end};
    }
    const std::size_t suffix_start = p.last_block * t + 1;
    if (suffix_start <= y) {
        p.suffix = ColorInterval{suffix_start, y};
    }
    return p;
}

DistanceAnswer HierarchyOracle::scan_against(ColorInterval scanned, ColorInterval target, QueryStats* stats) const {
    DistanceAnswer best;
    best.exact = true;
    std::size_t calls = 0;
    for (std::size_t r = scanned.first; r <= scanned.last; ++r) {
        const Neighbor nb = rnns_.range_nearest(target.first, target.last, by_rank_[r - 1]);
        ++calls;
        if (nb.distance < best.distance) {
            best.distance = nb.distance;
            best.witness_a = by_rank_[r - 1];
            best.witness_b = nb.point;
            if (nb.distance == 0) {
                break;
            }
        }
    }
    if (stats) {
        stats->rnns_calls += calls;
    }
    return best;
}

DistanceAnswer HierarchyOracle::query(Color c, Color other, QueryStats* stats) const {
    if (!hierarchy_.has_color(c)) {
        throw UnknownColor(c);
    }
    if (!hierarchy_.has_color(other)) {
        throw UnknownColor(other);
    }
    const ColorInterval ic = hierarchy_.intervals[c];
    const ColorInterval io = hierarchy_.intervals[other];
    if (ic.contains(io) || io.contains(ic)) {
        const std::size_t rank = ic.contains(io) ? io.first : ic.first;
        const Position p = by_rank_[rank - 1];
        return {0, p, p, true};
    }

    // Work with the left interval first and flip the witnesses back at the end.
    const bool flip = io.first < ic.first;
    const Color left = flip ? other : c;
    const Color right = flip ? c : other;
    const ColorInterval il = flip ? io : ic;
    const ColorInterval ir = flip ? ic : io;

    auto oriented = [flip](DistanceAnswer a) {
        if (flip) std::swap(a.witness_a, a.witness_b);
        return a;
    };
    auto swapped = [](DistanceAnswer a) {
        std::swap(a.witness_a, a.witness_b);
        return a;
    };

    const std::size_t t = static_cast<std::size_t>(tau_);
    const bool short_l = il.last - il.first < 2 * t;
    const bool short_r = ir.last - ir.first < 2 * t;
    if (short_l || short_r) {
        if (il.length() <= ir.length()) {
            return oriented(scan_against(il, ir, stats));
        }
        return oriented(swapped(scan_against(ir, il, stats)));
    }

    const ColorPartition pl = partition(left);
    const ColorPartition pr = partition(right);
    if (pl.first_block > pl.last_block || pr.first_block > pr.last_block) {
        // Unreachable for long intervals; answer exactly rather than index an
        // empty rectangle.
        return oriented(scan_against(il, ir, stats));
    }

    Candidate best;
    best.exact = true;
    auto take = [&](const DistanceAnswer& a) {
        if (a.distance == kInfinity) return;
        const Candidate cand{a.distance, *a.witness_a, *a.witness_b, true};
        if (cand.beats(best)) best = cand;
    };
    for (const auto& part : {pl.prefix, pl.suffix}) {
        if (part) take(scan_against(*part, ir, stats));
    }
    for (const auto& part : {pr.prefix, pr.suffix}) {
        if (part) take(swapped(scan_against(*part, il, stats)));
    }

    const auto m = rmq_.rect_min(pl.first_block, pr.first_block, pl.last_block, pr.last_block);
    if (stats) {
        ++stats->rmq_calls;
    }
    const Candidate table{m.value, m.payload.a, m.payload.b, mode_ == OracleMode::exact};
    if (table.beats(best)) {
        best = table;
    }

    DistanceAnswer out{best.value, best.a, best.b, best.exact};
    return oriented(out);
}

}
