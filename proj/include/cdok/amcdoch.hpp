#ifndef cdok_amcdoch_hpp
#define cdok_amcdoch_hpp

#include <optional>
#include <vector>

#include "cdok/acdo.hpp"
#include "cdok/core.hpp"
#include "cdok/rmq2d.hpp"
#include "cdok/rnns.hpp"

namespace cdok {

struct HierarchyOptions {
    double epsilon = 0.5;
    /// Block size of the pre-order array; defaults to ceil(sqrt(n)).
    std::optional<std::int64_t> tau;
    double omega = 3.0;
    OracleMode mode = OracleMode::approximate;
};

struct WitnessPair {
    Position a = 0;
    Position b = 0;

    friend bool operator==(const WitnessPair&, const WitnessPair&) = default;
};

using BlockDistanceCell = Rmq2d<WitnessPair>::Cell;

/// Split of a color's rank interval into a prefix, whole blocks and a suffix.
/// Only long intervals (last - first >= 2 tau) are split.
struct ColorPartition {
    ColorInterval whole;
    bool split = false;
    std::optional<ColorInterval> prefix;
    /// 1-based block ids of the middle part; empty when first_block > last_block.
    std::size_t first_block = 0;
    std::size_t last_block = 0;
    std::optional<ColorInterval> suffix;
};

/// Build statistics of the inner block-colored oracle.
struct InnerOracleStats {
    std::size_t points = 0;
    std::int64_t tau = 0;
    std::int64_t w = 0;
    std::size_t heavy = 0;
    int ell0 = 0;
    int ell_max = 0;
};

/*
 * Distance oracle for a color hierarchy.
 *
 * The pre-order array A is cut into blocks of tau ranks. Recoloring every
 * point by its block turns block-to-block distances into heavy-heavy queries
 * of a CdoOracle, which fill the block matrix B-hat; a 2D range minimum sits
 * on top of it. A query between disjoint colors whose intervals are both long
 * combines exact range-nearest scans of their ragged ends with one rectangle
 * minimum over the whole blocks in between. Short intervals are answered
 * exactly by range-nearest scans alone.
 */
class HierarchyOracle {
public:
    HierarchyOracle() = default;

    static HierarchyOracle build(ColorHierarchy h, const HierarchyOptions& options);

    DistanceAnswer query(Color c, Color other, QueryStats* stats = nullptr) const;

    const ColorHierarchy& hierarchy() const { return hierarchy_; }
    std::int64_t tau() const { return tau_; }
    double epsilon() const { return epsilon_; }
    OracleMode mode() const { return mode_; }
    double omega() const { return omega_; }
    std::size_t num_blocks() const { return blocks_; }
    /// Rank range of block i (1-based); the last block may be short.
    ColorInterval block_range(std::size_t i) const;
    /// Dummy positions padding the last block up to tau points.
    const std::vector<Position>& dummy_positions() const { return dummies_; }
    const Rmq2d<WitnessPair>& block_matrix() const { return rmq_; }
    const InnerOracleStats& inner_stats() const { return inner_; }

    ColorPartition partition(Color c) const;

    static HierarchyOracle from_parts(ColorHierarchy h, const HierarchyOptions& resolved, std::int64_t tau,
                                      std::vector<BlockDistanceCell> block_cells, InnerOracleStats inner);

private:
    void build_indexes(std::vector<BlockDistanceCell> cells);
    DistanceAnswer scan_against(ColorInterval scanned, ColorInterval target, QueryStats* stats) const;

    ColorHierarchy hierarchy_;
    std::vector<Position> by_rank_;
    RnnsIndex rnns_;
    Rmq2d<WitnessPair> rmq_;
    std::vector<Position> dummies_;
    InnerOracleStats inner_;
    std::int64_t tau_ = 1;
    std::size_t blocks_ = 0;
    double epsilon_ = 0.5;
    double omega_ = 3.0;
    OracleMode mode_ = OracleMode::approximate;
};

}

#endif /* cdok_amcdoch_hpp */
