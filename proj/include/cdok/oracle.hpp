#ifndef cdok_oracle_hpp
#define cdok_oracle_hpp

#include <string_view>
#include <vector>

#include "cdok/core.hpp"
#include "cdok/reductions.hpp"

// Brute-force reference answers. Slow on purpose; used by the tests and by
// `cdok verify`.
namespace cdok::oracle {

/// Sorted merge of both colors; returns the leftmost closest pair.
DistanceAnswer exact_color_distance(const ColoredPointSet& s, Color c, Color other);

/// Double loop over both point lists.
Distance quadratic_color_distance(const ColoredPointSet& s, Color c, Color other);

/// num_colors x num_colors matrix of exact distances, row-major, 0-based.
IntMatrix exact_all_pairs(const ColoredPointSet& s);

/// Closest pair between two position lists, leftmost on ties.
DistanceAnswer exact_set_distance(std::span<const Position> a, std::span<const Position> b);

/// Sorted positions of every color, index = color (entry 0 empty).
std::vector<std::vector<Position>> hierarchy_point_sets(const ColorHierarchy& h);

DistanceAnswer exact_hierarchy_distance(const ColorHierarchy& h, Color c, Color other);

/// 1-based start positions of every occurrence, overlaps included.
std::vector<std::size_t> naive_occurrences(std::string_view text, std::string_view pattern);

/// Closest pair of occurrence starts; kInfinity if either pattern is absent.
Distance naive_snippet_distance(std::string_view text, std::string_view p1, std::string_view p2);

}

#endif /* cdok_oracle_hpp */
