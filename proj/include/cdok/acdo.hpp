#ifndef cdok_acdo_hpp
#define cdok_acdo_hpp

#include <optional>
#include <string_view>
#include <vector>

#include "cdok/core.hpp"
#include "cdok/estar.hpp"
#include "cdok/nns.hpp"

namespace cdok {

enum class OracleMode { exact, approximate };

const char* to_string(OracleMode mode);
OracleMode parse_mode(std::string_view text);

struct CdoOptions {
    double epsilon = 0.5;
    /// Heavy threshold; defaults to ceil(n^tau_exponent).
    std::optional<std::int64_t> tau;
    double tau_exponent = 0.5;
    /// Block width; defaults to default_block_width().
    std::optional<std::int64_t> w;
    /// Matrix multiplication exponent used to pick w.
    double omega = 3.0;
    OracleMode mode = OracleMode::approximate;
};

/// Per-query work counters, filled by the caller-supplied instance.
struct QueryStats {
    std::size_t nns_calls = 0;
    std::size_t table_lookups = 0;
    std::size_t rnns_calls = 0;
    std::size_t rmq_calls = 0;
};

/// ceil(n^exponent), at least 1.
std::int64_t default_tau(std::size_t n, double exponent);

/*
 * Block width balancing the exact pass against the matrix products:
 *   tau >= n^((w-1)/(w+1)) sqrt(log n):  (n/tau)^((w-1)/2) sqrt(log n)
 *   otherwise:                          n / tau^(2/(w-1)) * log(n)^(1/(w-1))
 * with w the multiplication exponent, clamped to [1, max_s].
 */
std::int64_t default_block_width(std::size_t n, std::int64_t tau, double omega, Position max_s);

/*
 * Heavy-light color distance oracle. Every color gets a nearest-neighbor
 * index; heavy-heavy distances are precomputed into a table (E* in
 * approximate mode, exact per-pair scans in exact mode) and answered with
 * one lookup. Queries touching a light color scan the smaller color's points
 * against the other color's index and are exact.
 *
 * Witnesses are reported in the caller's coordinates.
 */
class CdoOracle {
public:
    CdoOracle() = default;

    static CdoOracle build(ColoredPointSet s, const CdoOptions& options);

    /// Colors are the dense ids of point_set(). Throws UnknownColor.
    DistanceAnswer query(Color c, Color other, QueryStats* stats = nullptr) const;

    const ColoredPointSet& point_set() const { return points_; }
    const EStarParams& params() const { return params_; }
    const EStarMatrix& heavy_table() const { return table_; }
    OracleMode mode() const { return mode_; }
    double omega() const { return omega_; }
    std::int64_t tau() const { return params_.tau; }
    std::int64_t block_width() const { return params_.w; }
    std::size_t heavy_count() const { return table_.size(); }
    bool is_heavy(Color c) const { return table_.heavy_index(c).has_value(); }

    /// Reassembles an oracle from a persisted heavy table; the per-color
    /// indexes are rebuilt.
    static CdoOracle from_parts(ColoredPointSet s, OracleMode mode, double omega, const EStarParams& params,
                                EStarMatrix table);

private:
    void build_indexes();

    ColoredPointSet points_;
    std::vector<NnsIndex> nns_;
    EStarParams params_;
    EStarMatrix table_;
    OracleMode mode_ = OracleMode::approximate;
    double omega_ = 3.0;
};

/// Exact heavy-heavy table by scanning the smaller color of every pair
/// against the other's index.
EStarMatrix exact_heavy_table(const ColoredPointSet& s, std::span<const Color> heavy,
                              std::span<const NnsIndex> indexes);

}

#endif /* cdok_acdo_hpp */
