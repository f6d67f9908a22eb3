#ifndef cdok_snippets_hpp
#define cdok_snippets_hpp

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdok/amcdoch.hpp"
#include "cdok/suffix_array.hpp"

namespace cdok {

/// A node of the suffix tree as a suffix-array rank interval (1-based,
/// closed, sentinel excluded) with its string depth.
struct TextNode {
    std::size_t lb = 0;
    std::size_t rb = 0;
    std::size_t depth = 0;
};

/// Suffix-tree shaped color hierarchy of a text: one color per node, points
/// are occurrence starts (1-based) in suffix-array order.
struct TextHierarchy {
    SuffixArray suffixes;
    std::vector<TextNode> nodes;  // index = color - 1
    ColorHierarchy hierarchy;
    std::map<std::pair<std::size_t, std::size_t>, Color> color_of_range;
};

TextHierarchy build_text_hierarchy(std::string_view text);

/*
 * Closest co-occurrence index over a text. Each pattern resolves by binary
 * search on the suffix array to the node whose interval holds exactly its
 * occurrences; the two node colors are then queried on a HierarchyOracle.
 * Distances are differences of 1-based start positions; occurrences may
 * overlap.
 */
class TextIndex {
public:
    TextIndex() = default;

    static TextIndex build(std::string text, const HierarchyOptions& options);

    /// Throws NotFound(1) or NotFound(2) for an absent pattern.
    DistanceAnswer query(std::string_view p1, std::string_view p2, QueryStats* stats = nullptr) const;

    /// Rank interval of the suffixes starting with `pattern`, if any.
    std::optional<ColorInterval> pattern_range(std::string_view pattern) const;
    std::optional<Color> locate(std::string_view pattern) const;
    /// Sorted 1-based start positions of `pattern`.
    std::vector<std::size_t> occurrences(std::string_view pattern) const;

    const std::string& text() const { return text_; }
    const TextHierarchy& tree() const { return tree_; }
    const HierarchyOracle& oracle() const { return oracle_; }

    static TextIndex from_parts(std::string text, TextHierarchy tree, HierarchyOracle oracle);

private:
    std::string text_;
    TextHierarchy tree_;
    HierarchyOracle oracle_;
};

}

#endif /* cdok_snippets_hpp */
