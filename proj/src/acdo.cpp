#include "cdok/acdo.hpp"

#include <algorithm>
#include <cmath>

namespace cdok {

const char* to_string(OracleMode mode) {
    return mode == OracleMode::exact ? "exact" : "approximate";
}

OracleMode parse_mode(std::string_view text) {
    if (text == "exact") return OracleMode::exact;
    if (text == "approximate" || text == "approx") return OracleMode::approximate;
    throw InvalidParameter("unknown oracle mode '" + std::string(text) + "'");
}

std::int64_t default_tau(std::size_t n, double exponent) {
    const double x = std::pow(static_cast<double>(n), exponent);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12))));
}

std::int64_t default_block_width(std::size_t n, std::int64_t tau, double omega, Position max_s) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double t = static_cast<double>(tau);
    const double logn = std::log(nn);
    const double threshold = std::pow(nn, (omega - 1.0) / (omega + 1.0)) * std::sqrt(logn);
    double w;
    if (t >= threshold) {
        w = std::pow(nn / t, (omega - 1.0) / 2.0) * std::sqrt(logn);
    } else {
        w = nn / std::pow(t, 2.0 / (omega - 1.0)) * std::pow(logn, 1.0 / (omega - 1.0));
    }
    const auto rounded = static_cast<std::int64_t>(std::llround(w));
    return std::clamp<std::int64_t>(rounded, 1, std::max<Position>(max_s, 1));
}

EStarMatrix exact_heavy_table(const ColoredPointSet& s, std::span<const Color> heavy,
                              std::span<const NnsIndex> indexes) {
    EStarMatrix table(std::vector<Color>(heavy.begin(), heavy.end()));
    const std::size_t h = heavy.size();
    for (std::size_t i = 0; i < h; ++i) {
        const Position p = s.positions_of(heavy[i]).front();
        table.canonical(i, i) = {0, p, p, true};
    }
    const auto rows = static_cast<std::int64_t>(h);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < h; ++j) {
            const auto pi = s.positions_of(heavy[i]);
            const auto pj = s.positions_of(heavy[j]);
            const bool scan_i = pi.size() <= pj.size();
            const auto& scanned = scan_i ? pi : pj;
            const NnsIndex& other = indexes[(scan_i ? heavy[j] : heavy[i]) - 1];
            EStarEntry best{};
            best.exact = true;
            for (Position p : scanned) {
                const Neighbor nb = other.nearest(p);
                if (nb.distance < best.value) {
                    best.value = nb.distance;
                    best.low_point = scan_i ? p : nb.point;
                    best.high_point = scan_i ? nb.point : p;
                }
            }
            table.canonical(i, j) = best;
        }
    }
    return table;
}

void CdoOracle::build_indexes() {
    nns_.clear();
    nns_.reserve(points_.num_colors());
    for (Color c = 1; c <= points_.num_colors(); ++c) {
        const auto pos = points_.positions_of(c);
        nns_.emplace_back(std::vector<Position>(pos.begin(), pos.end()));
    }
}

CdoOracle CdoOracle::build(ColoredPointSet s, const CdoOptions& options) {
    if (s.size() == 0) {
        throw InvalidInput("color distance oracle over an empty point set");
    }
    CdoOracle o;
    o.points_ = std::move(s);
    o.mode_ = options.mode;
    o.omega_ = options.omega;
    if (!(options.omega > 1.0)) {
        throw InvalidParameter("omega must exceed 1");
    }
    const std::size_t n = o.points_.size();
    const std::int64_t tau = options.tau.value_or(default_tau(n, options.tau_exponent));
    if (tau < 1) {
        throw InvalidParameter("tau must be at least 1");
    }
    const std::int64_t w = options.w.value_or(default_block_width(n, tau, options.omega, o.points_.universe_size()));
    // Exact mode ignores epsilon; keep a valid placeholder so the level
    // bookkeeping stays meaningful.
    const double epsilon = options.mode == OracleMode::exact ? 1.0 : options.epsilon;
    o.params_ = EStarParams::make(epsilon, tau, w, o.points_.universe_size());
    if (options.mode == OracleMode::exact) {
        o.params_.epsilon = 0.0;
    }
    o.build_indexes();

    const HeavySplit split = classify_colors(o.points_, tau);
    if (o.mode_ == OracleMode::exact) {
        o.table_ = exact_heavy_table(o.points_, split.heavy, o.nns_);
    } else {
        o.table_ = construct_estar(o.points_, split.heavy, o.params_);
    }
    return o;
}

CdoOracle CdoOracle::from_parts(ColoredPointSet s, OracleMode mode, double omega, const EStarParams& params,
                                EStarMatrix table) {
    CdoOracle o;
    o.points_ = std::move(s);
    o.mode_ = mode;
    o.omega_ = omega;
    o.params_ = params;
    o.table_ = std::move(table);
    o.build_indexes();
    return o;
}

DistanceAnswer CdoOracle::query(Color c, Color other, QueryStats* stats) const {
    if (!points_.has_color(c)) {
        throw UnknownColor(c);
    }
    if (!points_.has_color(other)) {
        throw UnknownColor(other);
    }
    if (c == other) {
        const Position p = points_.to_original(points_.positions_of(c).front());
        return {0, p, p, true};
    }
    const auto hc = table_.heavy_index(c);
    const auto ho = table_.heavy_index(other);
    if (hc && ho) {
        if (stats) {
            ++stats->table_lookups;
        }
        const auto e = table_.lookup(*hc, *ho);
        return {e.value, points_.to_original(e.point_i), points_.to_original(e.point_j),
                mode_ == OracleMode::exact};
    }

    const auto pc = points_.positions_of(c);
    const auto po = points_.positions_of(other);
    const bool scan_c = pc.size() <= po.size();
    const auto& scanned = scan_c ? pc : po;
    const NnsIndex& index = nns_[(scan_c ? other : c) - 1];
    DistanceAnswer best;
    best.exact = true;
    Position mine = 0;
    Position theirs = 0;
    std::size_t calls = 0;
    for (Position p : scanned) {
        const Neighbor nb = index.nearest(p);
        ++calls;
        if (nb.distance < best.distance) {
            best.distance = nb.distance;
            mine = p;
            theirs = nb.point;
            if (nb.distance == 0) {
                break;
            }
        }
    }
    if (stats) {
        stats->nns_calls += calls;
    }
    const Position a = scan_c ? mine : theirs;
    const Position b = scan_c ? theirs : mine;
    best.witness_a = points_.to_original(a);
    best.witness_b = points_.to_original(b);
    return best;
}

}
