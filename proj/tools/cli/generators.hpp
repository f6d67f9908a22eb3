#ifndef cdok_cli_generators_hpp
#define cdok_cli_generators_hpp

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cdok/core.hpp"
#include "cdok/reductions.hpp"

namespace cdok::gen {

enum class Shape { uniform, clustered, adversarial_heavy };

Shape parse_shape(std::string_view name);
const char* to_string(Shape shape);

struct PointSpec {
    Shape shape = Shape::uniform;
    std::size_t n = 1000;
    std::size_t colors = 32;
    Position universe = 10000;
    std::uint64_t seed = 1;
};

/// "shape:key=value,..." with keys n, colors, universe, seed; missing keys
/// keep their defaults. Throws InvalidParameter.
PointSpec parse_point_spec(std::string_view text);

/*
 * Deterministic point sets; every color in 1..colors gets at least one point.
 *   uniform            colors and positions uniform
 *   clustered          each color scattered around its own random center
 *   adversarial_heavy  Zipf color sizes over uniform positions, so heavy
 *                      colors exist at every threshold and interleave
 */
std::vector<RawPoint> points(const PointSpec& spec);

struct HierarchySpec {
    std::size_t n = 200;
    std::size_t colors = 20;
    Position universe = 1000;
    std::uint64_t seed = 1;
};

/// Random laminar family over distinct positions: random color tree, every
/// color owns at least one point.
ColorHierarchy hierarchy(const HierarchySpec& spec);

/// Random text over the first `alphabet` lowercase letters.
std::string text(std::size_t length, std::size_t alphabet, std::uint64_t seed);

/// rows x cols matrix with entries uniform in [lo, hi].
IntMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

}

#endif /* cdok_cli_generators_hpp */
