#ifndef cdok_reductions_hpp
#define cdok_reductions_hpp

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cdok/core.hpp"
#include "cdok/nns.hpp"

namespace cdok {

/// Dense row-major integer matrix; kInfinity marks unresolved entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<std::int64_t>& data() const { return data_; }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/*
 * (min,+) product instance: a is rows x inner, b is inner x cols, all
 * entries in [0, m]. If any entry is 0 both matrices are used shifted by one
 * (`offset` = 1) so the point constructions see entries in [1, m + 1].
 */
struct MinPlusInstance {
    IntMatrix a;
    IntMatrix b;
    std::int64_t m = 1;
    std::int64_t offset = 0;

    /// Throws DimensionError or InvalidInput.
    static MinPlusInstance make(IntMatrix a, IntMatrix b, std::int64_t m);

    std::size_t rows() const { return a.rows(); }
    std::size_t inner() const { return a.cols(); }
    std::size_t cols() const { return b.cols(); }
    /// Entry bound after the shift.
    std::int64_t bound() const { return m + offset; }
    std::int64_t a_at(std::size_t i, std::size_t k) const { return a.at(i, k) + offset; }
    std::int64_t b_at(std::size_t k, std::size_t j) const { return b.at(k, j) + offset; }
};

/// Triple loop over the caller's (unshifted) entries.
IntMatrix minplus_direct(const MinPlusInstance& inst);

/// A point carrying every color of the coinciding construction points.
struct MultiColorPoint {
    Position position;
    std::vector<Color> colors;
};

/*
 * Row i of a becomes points (M - a[i][k]) + 9Mk of color i, column j of b
 * becomes points b[k][j] + 3M + 9Mk of color rows + j (k from 1, M the
 * shifted bound). Points at the same position are merged. Ordered by
 * position.
 */
std::vector<MultiColorPoint> mcdo_points(const MinPlusInstance& inst);

/// Exact distance oracle over points with several colors each: one nearest
/// neighbor index per color, queries scan the smaller color.
class MultiColorOracle {
public:
    MultiColorOracle(std::span<const MultiColorPoint> points, Color num_colors);

    Color num_colors() const { return static_cast<Color>(indexes_.size()); }
    bool has_points(Color c) const { return c >= 1 && c <= num_colors() && indexes_[c - 1].has_value(); }
    /// kInfinity when either color has no points. Throws UnknownColor.
    DistanceAnswer query(Color c, Color other) const;

private:
    std::vector<std::vector<Position>> by_color_;
    std::vector<std::optional<NnsIndex>> indexes_;
};

/// D through one multi-color distance query per entry.
IntMatrix reduce_to_mcdo(const MinPlusInstance& inst);

/// ceil(c ln(rows * cols)), at least 1.
int auto_alpha(std::size_t rows, std::size_t cols, double c = 4.0);

struct RepetitionTrace {
    int repetition = 0;
    std::vector<std::int64_t> row_offsets;
    std::vector<std::int64_t> col_offsets;
    /// Points dropped because their position was shared.
    std::size_t removed_points = 0;
    /// Points left after the removal, as (position, color).
    std::vector<RawPoint> survivors;
    /// Per-entry d~ - r - s, kInfinity where a color vanished.
    IntMatrix estimate;
};

using RepetitionObserver = std::function<void(const RepetitionTrace&)>;

struct RandomizedProduct {
    IntMatrix d;
    std::size_t unresolved = 0;
    int repetitions = 0;
};

/*
 * D through single-colored distance queries. Each repetition adds random
 * offsets r_i, s_j in [1, rows] to the rows of a and columns of b, builds the
 * points as in mcdo_points with bound M + rows, deletes every position that
 * occurs more than once, and queries an exact oracle. The answer is the
 * minimum of d~ - r_i - s_j over repetitions; entries never resolved stay
 * kInfinity. alpha = 0 selects auto_alpha().
 */
RandomizedProduct reduce_to_cdo_randomized(const MinPlusInstance& inst, int alpha, std::uint64_t seed,
                                           const RepetitionObserver& observer = {});

}

#endif /* cdok_reductions_hpp */
