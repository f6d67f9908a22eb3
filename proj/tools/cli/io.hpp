#ifndef cdok_cli_io_hpp
#define cdok_cli_io_hpp

#include <istream>
#include <string>
#include <vector>

#include "cdok/core.hpp"
#include "cdok/reductions.hpp"

namespace cdok::cli {

/// Input that does not follow its file format; the message names the line.
class ParseError : public InvalidInput {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// "position color" per line; blank lines and lines starting with '#' are skipped.
std::vector<RawPoint> read_points(std::istream& in);

/// Hierarchy file as written: header "n colors", n lines "position
/// leaf_color", then one line "color parent" per color (0 = root).
struct HierarchyFile {
    std::vector<Position> positions;
    std::vector<Color> leaf_color;
    std::vector<Color> parent;  // index = file color, entry 0 unused
};

HierarchyFile read_hierarchy_file(std::istream& in);

/*
 * Hierarchy with file colors that share a point set folded into one: a color
 * owning no points with a single child has the child's set, so it is merged
 * into that child. `alias` maps every file color to its color in
 * `hierarchy`.
 */
struct LoadedHierarchy {
    ColorHierarchy hierarchy;
    std::vector<Color> alias;
};

/// Throws InvalidInput if the tree is malformed or a color has no points.
LoadedHierarchy resolve_hierarchy(const HierarchyFile& file);

/// Header "rows inner M", rows lines of A, a line ";", inner lines of B with
/// rows entries each.
MinPlusInstance read_matrices(std::istream& in);

std::string read_all(std::istream& in);

}

#endif /* cdok_cli_io_hpp */
