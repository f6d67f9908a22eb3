#ifndef cdok_core_hpp
#define cdok_core_hpp

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdok {

using Position = std::int64_t;
using Distance = std::int64_t;
using Color = std::uint32_t;

/// Reserved "no finite distance" value.
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();

/*
 * Error types. Every failure the library reports is one of these.
 */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidRange : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class UnknownColor : public Error {
public:
    explicit UnknownColor(std::int64_t color)
        : Error("unknown color " + std::to_string(color)), color_(color) {}
    std::int64_t color() const { return color_; }

private:
    std::int64_t color_;
};

class NotFound : public Error {
public:
    /// `which` is 1 or 2: the pattern argument that has no occurrence.
    explicit NotFound(int which)
        : Error("pattern " + std::to_string(which) + " does not occur"), which_(which) {}
    int which() const { return which_; }

private:
    int which_;
};

/// Answer to a color distance query. witness_a belongs to the first queried
/// color and witness_b to the second.
struct DistanceAnswer {
    Distance distance = kInfinity;
    std::optional<Position> witness_a;
    std::optional<Position> witness_b;
    bool exact = false;

    bool has_witnesses() const { return witness_a.has_value() && witness_b.has_value(); }
};

struct RawPoint {
    std::int64_t position;
    std::int64_t color;
};

struct ColoredPoint {
    Position position;
    Color color;

    friend bool operator==(const ColoredPoint&, const ColoredPoint&) = default;
};

/*
 * n colored points on the integer line. Positions are shifted so the smallest
 * one is 1 and colors are re-indexed densely as 1..num_colors(); both
 * mappings back to the caller's values are retained.
 */
class ColoredPointSet {
public:
    ColoredPointSet() = default;

    /// All points ordered by (position, color).
    std::span<const ColoredPoint> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    Color num_colors() const { return static_cast<Color>(by_color_.size()); }
    /// Largest normalized position.
    Position universe_size() const { return universe_size_; }

    /// Sorted, distinct normalized positions of color c (1-based id).
    std::span<const Position> positions_of(Color c) const;
    bool has_color(Color c) const { return c >= 1 && c <= num_colors(); }

    std::int64_t shift() const { return shift_; }
    Position to_original(Position p) const { return p + shift_; }
    std::int64_t original_color(Color c) const;
    std::optional<Color> dense_color(std::int64_t original) const;
    std::span<const std::int64_t> original_colors() const { return original_colors_; }

    /// Raw points in caller coordinates, suitable for feeding back to normalize().
    std::vector<RawPoint> to_raw() const;

    friend ColoredPointSet normalize(std::span<const RawPoint> raw);

private:
    std::vector<ColoredPoint> points_;
    std::vector<std::vector<Position>> by_color_;
    std::vector<std::int64_t> original_colors_;
    Position universe_size_ = 0;
    std::int64_t shift_ = 0;
};

ColoredPointSet normalize(std::span<const RawPoint> raw);

/// Closed 1-based range of ranks in the pre-order array.
struct ColorInterval {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t length() const { return last - first + 1; }
    bool contains(std::size_t rank) const { return first <= rank && rank <= last; }
    bool contains(const ColorInterval& other) const {
        return first <= other.first && other.last <= last;
    }
    friend bool operator==(const ColorInterval&, const ColorInterval&) = default;
};

/*
 * Laminar color family over a point set, stored as its tree T_S.
 *
 * Colors are 1..num_colors(); parent[c] == 0 means c hangs off the dummy
 * root. Each point carries its lowest color. `preorder` lists point indices
 * in pre-order of the tree, so every color occupies the contiguous rank
 * range intervals[c] (1-based, closed). Index 0 of `parent` and `intervals`
 * is unused.
 *
 * The fields are public so inconsistent hierarchies can be represented and
 * reported by validate_hierarchy(); from_tree() only returns valid ones.
 */
struct ColorHierarchy {
    std::vector<Color> parent;
    std::vector<Position> positions;
    std::vector<Color> leaf_color;
    std::vector<std::size_t> preorder;
    std::vector<ColorInterval> intervals;

    Color num_colors() const { return parent.empty() ? 0 : static_cast<Color>(parent.size() - 1); }
    std::size_t num_points() const { return positions.size(); }
    bool has_color(Color c) const { return c >= 1 && c <= num_colors(); }
    /// Position stored at 1-based rank r of the pre-order array.
    Position position_at_rank(std::size_t r) const { return positions[preorder[r - 1]]; }
    /// Positions of the pre-order array, rank 1 first.
    std::vector<Position> preorder_positions() const;

    /// Builds the pre-order array and intervals. `parent` has num_colors + 1
    /// entries (entry 0 ignored). A color's own points come before its
    /// children; children are visited in increasing id. Throws InvalidInput
    /// if the result fails validate_hierarchy() or a color has no points.
    static ColorHierarchy from_tree(std::span<const Position> positions,
                                    std::span<const Color> leaf_color,
                                    std::span<const Color> parent);
};

struct HierarchyViolation {
    enum class Kind {
        malformed,
        interval_out_of_bounds,
        overlapping_colors,
        duplicate_point_sets,
        child_outside_parent,
        interval_mismatch,
    };
    Kind kind;
    Color first = 0;
    Color second = 0;
    std::string message;
};

std::optional<HierarchyViolation> validate_hierarchy(const ColorHierarchy& h);

}

#endif /* cdok_core_hpp */
