#include "cdok/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace cdok::oracle {

DistanceAnswer exact_set_distance(std::span<const Position> a, std::span<const Position> b) {
    DistanceAnswer best;
    best.exact = true;
    std::size_t i = 0, j = 0;
    // Walk both sorted lists; the closest pair is adjacent in the merged order.
    while (i < a.size() && j < b.size()) {
        const Distance d = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
        const Position left = std::min(a[i], b[j]);
        const bool better = d < best.distance ||
                            (d == best.distance && left < std::min(*best.witness_a, *best.witness_b));
        if (better) {
            best.distance = d;
            best.witness_a = a[i];
            best.witness_b = b[j];
        }
        if (a[i] <= b[j]) ++i;
        else ++j;
    }
    return best;
}

DistanceAnswer exact_color_distance(const ColoredPointSet& s, Color c, Color other) {
    if (!s.has_color(c)) throw UnknownColor(c);
    if (!s.has_color(other)) throw UnknownColor(other);
    DistanceAnswer ans = exact_set_distance(s.positions_of(c), s.positions_of(other));
    ans.witness_a = s.to_original(*ans.witness_a);
    ans.witness_b = s.to_original(*ans.witness_b);
    return ans;
}

Distance quadratic_color_distance(const ColoredPointSet& s, Color c, Color other) {
    if (!s.has_color(c)) throw UnknownColor(c);
    if (!s.has_color(other)) throw UnknownColor(other);
    Distance best = kInfinity;
    for (Position p : s.positions_of(c)) {
        for (Position q : s.positions_of(other)) {
            best = std::min<Distance>(best, std::llabs(p - q));
        }
    }
    return best;
}

IntMatrix exact_all_pairs(const ColoredPointSet& s) {
    const Color k = s.num_colors();
    IntMatrix out(k, k, 0);
    for (Color c = 1; c <= k; ++c) {
        for (Color d = c + 1; d <= k; ++d) {
            const Distance v = exact_set_distance(s.positions_of(c), s.positions_of(d)).distance;
            out.at(c - 1, d - 1) = v;
            out.at(d - 1, c - 1) = v;
        }
    }
    return out;
}

std::vector<std::vector<Position>> hierarchy_point_sets(const ColorHierarchy& h) {
    const Color k = h.num_colors();
    std::vector<std::vector<Position>> sets(k + 1);
    for (std::size_t p = 0; p < h.num_points(); ++p) {
        // Walk up the tree: a point belongs to its leaf color and all ancestors.
        for (Color c = h.leaf_color[p]; c != 0; c = h.parent[c]) {
            sets[c].push_back(h.positions[p]);
        }
    }
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return sets;
}

DistanceAnswer exact_hierarchy_distance(const ColorHierarchy& h, Color c, Color other) {
    if (!h.has_color(c)) throw UnknownColor(c);
    if (!h.has_color(other)) throw UnknownColor(other);
    const auto sets = hierarchy_point_sets(h);
    return exact_set_distance(sets[c], sets[other]);
}

std::vector<std::size_t> naive_occurrences(std::string_view text, std::string_view pattern) {
    std::vector<std::size_t> out;
    if (pattern.size() > text.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        if (text.substr(i, pattern.size()) == pattern) out.push_back(i + 1);
    }
    return out;
}

Distance naive_snippet_distance(std::string_view text, std::string_view p1, std::string_view p2) {
    const auto a = naive_occurrences(text, p1);
    const auto b = naive_occurrences(text, p2);
    Distance best = kInfinity;
    for (auto x : a) {
        for (auto y : b) {
            best = std::min<Distance>(best, std::llabs(static_cast<Distance>(x) - static_cast<Distance>(y)));
        }
    }
    return best;
}

}
