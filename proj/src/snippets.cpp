#include "cdok/snippets.hpp"

#include <algorithm>

namespace cdok {

TextHierarchy build_text_hierarchy(std::string_view text) {
    if (text.empty()) {
        throw InvalidInput("text is empty");
    }
    TextHierarchy t;
    t.suffixes = build_suffix_array(text);
    const auto& sa = t.suffixes.sa;
    const auto& lcp = t.suffixes.lcp;
    const std::size_t n = text.size();

    // LCP intervals over ranks 1..n by the usual bottom-up stack sweep.
    std::vector<TextNode> found;
    struct Open {
        std::int64_t depth;
        std::size_t lb;
    };
    std::vector<Open> stack{{0, 1}};
    for (std::size_t r = 2; r <= n + 1; ++r) {
        const std::int64_t l = r <= n ? static_cast<std::int64_t>(lcp[r]) : -1;
        std::size_t lb = r - 1;
        while (!stack.empty() && l < stack.back().depth) {
            const Open top = stack.back();
            stack.pop_back();
            found.push_back({top.lb, r - 1, static_cast<std::size_t>(top.depth)});
            lb = top.lb;
        }
        if (l >= 0 && (stack.empty() || l > stack.back().depth)) {
            stack.push_back({l, lb});
        }
    }
    for (std::size_t r = 1; r <= n; ++r) {
        found.push_back({r, r, n - sa[r]});
    }

    // The root repeats its only child's interval when every suffix shares a
    // first character; keep the deeper node.
    std::sort(found.begin(), found.end(), [](const TextNode& a, const TextNode& b) {
        if (a.lb != b.lb) return a.lb < b.lb;
        if (a.rb != b.rb) return a.rb > b.rb;
        return a.depth > b.depth;
    });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const TextNode& a, const TextNode& b) { return a.lb == b.lb && a.rb == b.rb; }),
                found.end());
    t.nodes = found;

    std::vector<Color> parent(found.size() + 1, 0);
    std::vector<Color> open;
    for (std::size_t k = 0; k < found.size(); ++k) {
        const Color c = static_cast<Color>(k + 1);
        while (!open.empty() && found[open.back() - 1].rb < found[k].lb) open.pop_back();
        parent[c] = open.empty() ? 0 : open.back();
        open.push_back(c);
        t.color_of_range[{found[k].lb, found[k].rb}] = c;
    }

    std::vector<Position> positions(n);
    std::vector<Color> leaf(n);
    for (std::size_t r = 1; r <= n; ++r) {
        positions[r - 1] = static_cast<Position>(sa[r]) + 1;
        leaf[r - 1] = t.color_of_range.at({r, r});
    }
    t.hierarchy = ColorHierarchy::from_tree(positions, leaf, parent);
    return t;
}

TextIndex TextIndex::build(std::string text, const HierarchyOptions& options) {
    TextIndex idx;
    idx.tree_ = build_text_hierarchy(text);
    idx.text_ = std::move(text);
    idx.oracle_ = HierarchyOracle::build(idx.tree_.hierarchy, options);
    return idx;
}

TextIndex TextIndex::from_parts(std::string text, TextHierarchy tree, HierarchyOracle oracle) {
    TextIndex idx;
    idx.text_ = std::move(text);
    idx.tree_ = std::move(tree);
    idx.oracle_ = std::move(oracle);
    return idx;
}

std::optional<ColorInterval> TextIndex::pattern_range(std::string_view pattern) const {
    const auto& sa = tree_.suffixes.sa;
    const std::string_view text = text_;
    const std::size_t n = text.size();
    auto head = [&](std::size_t r) { return text.substr(sa[r], pattern.size()); };
    std::size_t lo = 1, hi = n + 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (head(mid) < pattern) lo = mid + 1;
        else hi = mid;
    }
    const std::size_t first = lo;
    hi = n + 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (head(mid) == pattern) lo = mid + 1;
        else hi = mid;
    }
    if (lo == first) {
        return std::nullopt;
    }
    return ColorInterval{first, lo - 1};
}

std::optional<Color> TextIndex::locate(std::string_view pattern) const {
    const auto range = pattern_range(pattern);
    if (!range) {
        return std::nullopt;
    }
    return tree_.color_of_range.at({range->first, range->last});
}

std::vector<std::size_t> TextIndex::occurrences(std::string_view pattern) const {
    std::vector<std::size_t> out;
    if (const auto range = pattern_range(pattern)) {
        for (std::size_t r = range->first; r <= range->last; ++r) {
            out.push_back(tree_.suffixes.sa[r] + 1);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

DistanceAnswer TextIndex::query(std::string_view p1, std::string_view p2, QueryStats* stats) const {
    const auto c1 = locate(p1);
    if (!c1) throw NotFound(1);
    const auto c2 = locate(p2);
    if (!c2) throw NotFound(2);
    return oracle_.query(*c1, *c2, stats);
}

}
