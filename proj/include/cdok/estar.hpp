#ifndef cdok_estar_hpp
#define cdok_estar_hpp

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cdok/boolmat.hpp"
#include "cdok/core.hpp"

namespace cdok {

/*
 * Parameters of one E* build. `epsilon` is the caller's target; the matrix
 * levels are computed with the internal epsilon/3, which is what ell0,
 * ell_max and every window length refer to.
 */
struct EStarParams {
    double epsilon = 1.0;
    double internal_epsilon = 1.0 / 3.0;
    std::int64_t tau = 1;
    std::int64_t w = 1;
    int ell0 = 0;
    int ell_max = 0;

    /// Throws InvalidParameter unless 0 < epsilon <= 1, tau >= 1, w >= 1.
    static EStarParams make(double epsilon, std::int64_t tau, std::int64_t w, Position max_s);

    /// floor(((1 + 2e) / e) * w) for the internal epsilon e: the reach of the
    /// exact pass.
    std::int64_t brute_window() const;
    /// floor((1 + e)^ell * w), the stretch of B^(ell) past its block.
    std::int64_t stretch(int ell) const;
    /// ceil((1 + e)^(ell + 2) * w), the value assigned to far pairs.
    Distance far_value(int ell) const;
};

/// floor(log_{1+e}(1/e)) + 1
int level_floor(double epsilon);
/// ceil(log_{1+e}(max_s)), never below 0.
int level_ceiling(double epsilon, Position max_s);

struct HeavySplit {
    std::vector<Color> heavy;
    std::vector<Color> light;
};

/// Heavy colors have at least tau points. Both lists ascend.
HeavySplit classify_colors(const ColoredPointSet& s, std::int64_t tau);

/// A Boolean block matrix with one witnessing point per 1-entry.
struct BlockMatrix {
    BitMatrix bits;
    std::vector<Position> points;  // row-major, meaningful where bits is set

    Position point(std::size_t i, std::size_t j) const { return points[i * bits.cols() + j]; }
};

/// Number of width-w blocks covering [1, max(S)].
std::size_t block_count(const ColoredPointSet& s, std::int64_t w);

/// |H| x blocks: entry (i, j) is set iff heavy[i] has a point in
/// [j w + 1, (j + 1) w] (0-based j). The witness is the smallest such point.
BlockMatrix build_block_matrix_a(const ColoredPointSet& s, std::span<const Color> heavy, std::int64_t w);

/// blocks x |H|: entry (i, j) is set iff heavy[j] has a point in
/// [i w + 1, (i + 1) w + stretch] where stretch = floor((1 + epsilon)^ell w).
/// The witness is the smallest such point.
BlockMatrix build_block_matrix_b(const ColoredPointSet& s, std::span<const Color> heavy, std::int64_t w, int ell,
                                 double epsilon);

struct EStarEntry {
    Distance value = kInfinity;
    /// Witness points, first of the lower heavy index, then the higher one.
    Position low_point = 0;
    Position high_point = 0;
    bool exact = false;

    bool finite() const { return value != kInfinity; }
    friend bool operator==(const EStarEntry&, const EStarEntry&) = default;
};

/*
 * Symmetric |H| x |H| table of heavy-heavy distances. Only the canonical
 * (i <= j) half is stored.
 */
class EStarMatrix {
public:
    EStarMatrix() = default;
    explicit EStarMatrix(std::vector<Color> heavy);

    std::size_t size() const { return heavy_.size(); }
    std::span<const Color> heavy_colors() const { return heavy_; }
    std::optional<std::size_t> heavy_index(Color c) const;

    /// Entry for heavy indices (i, j) in either order; the witness is
    /// returned oriented as (point of heavy[i], point of heavy[j]).
    struct Oriented {
        Distance value;
        Position point_i;
        Position point_j;
        bool exact;
    };
    Oriented lookup(std::size_t i, std::size_t j) const;

    const EStarEntry& canonical(std::size_t i, std::size_t j) const { return entries_[slot(i, j)]; }
    EStarEntry& canonical(std::size_t i, std::size_t j) { return entries_[slot(i, j)]; }

    /// Keeps the smaller of the stored and offered entries; equal values keep
    /// the lexicographically smaller witness pair.
    void offer(std::size_t i, std::size_t j, const EStarEntry& e);

    std::span<const EStarEntry> entries() const { return entries_; }
    std::vector<EStarEntry>& mutable_entries() { return entries_; }

private:
    std::size_t slot(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * heavy_.size() - i * (i + 1) / 2 + j;
    }

    std::vector<Color> heavy_;
    std::vector<std::uint32_t> index_of_;  // color -> heavy index + 1, 0 if light
    std::vector<EStarEntry> entries_;
};

/// Called once per constructed level with E^(ell) = A * B^(ell).
using LevelObserver = std::function<void(int ell, const BitMatrix& e)>;

/// Exact distances for every heavy pair within the brute window, with the
/// leftmost attaining witness pair. Pairs further apart stay infinite.
void fill_close_pairs(const ColoredPointSet& s, const EStarParams& params, EStarMatrix& table);

/*
 * Builds the approximate heavy-heavy matrix: exact values for close pairs,
 * (1+e)^(ell+2) w for far pairs where ell is the level at which the pair's
 * entries in E first turn on, with witnesses taken from the product witness
 * at level ell + 1. Guarantees delta <= value <= (1 + epsilon) delta.
 */
EStarMatrix construct_estar(const ColoredPointSet& s, std::span<const Color> heavy, const EStarParams& params,
                            const LevelObserver& observer = {}, const BoolMultiplier* multiplier = nullptr);

}

#endif /* cdok_estar_hpp */
