#include "cdok/core.hpp"

#include <algorithm>
#include <numeric>

namespace cdok {

std::span<const Position> ColoredPointSet::positions_of(Color c) const {
    if (!has_color(c)) {
        throw UnknownColor(c);
    }
    return by_color_[c - 1];
}

std::int64_t ColoredPointSet::original_color(Color c) const {
    if (!has_color(c)) {
        throw UnknownColor(c);
    }
    return original_colors_[c - 1];
}

std::optional<Color> ColoredPointSet::dense_color(std::int64_t original) const {
    auto it = std::lower_bound(original_colors_.begin(), original_colors_.end(), original);
    if (it == original_colors_.end() || *it != original) {
        return std::nullopt;
    }
    return static_cast<Color>(it - original_colors_.begin() + 1);
}

std::vector<RawPoint> ColoredPointSet::to_raw() const {
    std::vector<RawPoint> raw;
    raw.reserve(points_.size());
    for (const auto& p : points_) {
        raw.push_back({to_original(p.position), original_colors_[p.color - 1]});
    }
    return raw;
}

ColoredPointSet normalize(std::span<const RawPoint> raw) {
    if (raw.empty()) {
        throw InvalidInput("point set is empty");
    }
    Position min_pos = raw.front().position;
    std::vector<std::int64_t> colors;
    colors.reserve(raw.size());
    for (const auto& p : raw) {
        if (p.color <= 0) {
            throw InvalidInput("color ids must be positive, got " + std::to_string(p.color));
        }
        min_pos = std::min(min_pos, p.position);
        colors.push_back(p.color);
    }
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());

    ColoredPointSet s;
    s.shift_ = min_pos - 1;
    s.original_colors_ = std::move(colors);
    s.points_.reserve(raw.size());
    for (const auto& p : raw) {
        s.points_.push_back({p.position - s.shift_, *s.dense_color(p.color)});
    }
    std::sort(s.points_.begin(), s.points_.end(), [](const ColoredPoint& a, const ColoredPoint& b) {
        return a.position != b.position ? a.position < b.position : a.color < b.color;
    });
    s.points_.erase(std::unique(s.points_.begin(), s.points_.end()), s.points_.end());

    s.by_color_.assign(s.original_colors_.size(), {});
    for (const auto& p : s.points_) {
        s.by_color_[p.color - 1].push_back(p.position);
    }
    s.universe_size_ = s.points_.back().position;
    return s;
}

std::vector<Position> ColorHierarchy::preorder_positions() const {
    std::vector<Position> out;
    out.reserve(preorder.size());
    for (auto idx : preorder) {
        out.push_back(positions[idx]);
    }
    return out;
}

namespace {

HierarchyViolation violation(HierarchyViolation::Kind kind, Color a, Color b, std::string msg) {
    return HierarchyViolation{kind, a, b, std::move(msg)};
}

std::string pair_str(Color a, Color b) {
    return "colors " + std::to_string(a) + " and " + std::to_string(b);
}

// Returns the depth of every color (roots have depth 1) or nullopt on a cycle.
std::optional<std::vector<std::size_t>> color_depths(const std::vector<Color>& parent, Color* cycle_at) {
    const Color num_colors = static_cast<Color>(parent.size() - 1);
    std::vector<std::size_t> depth(parent.size(), 0);
    std::vector<std::uint8_t> state(parent.size(), 0);
    std::vector<Color> path;
    for (Color c = 1; c <= num_colors; ++c) {
        path.clear();
        Color v = c;
        while (v != 0 && state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = parent[v];
        }
        if (v != 0 && state[v] == 1) {
            *cycle_at = v;
            return std::nullopt;
        }
        std::size_t d = (v == 0) ? 0 : depth[v];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            depth[*it] = ++d;
            state[*it] = 2;
        }
    }
    return depth;
}

}

std::optional<HierarchyViolation> validate_hierarchy(const ColorHierarchy& h) {
    using Kind = HierarchyViolation::Kind;
    const std::size_t n = h.num_points();
    if (h.parent.empty() || h.intervals.size() != h.parent.size()) {
        return violation(Kind::malformed, 0, 0, "parent and interval tables disagree in size");
    }
    if (h.leaf_color.size() != n || h.preorder.size() != n) {
        return violation(Kind::malformed, 0, 0, "per-point tables disagree in size");
    }
    const Color num_colors = h.num_colors();
    for (Color c = 1; c <= num_colors; ++c) {
        if (h.parent[c] > num_colors || h.parent[c] == c) {
            return violation(Kind::malformed, c, h.parent[c], "color " + std::to_string(c) + " has an invalid parent");
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (h.leaf_color[p] == 0 || h.leaf_color[p] > num_colors) {
            return violation(Kind::malformed, h.leaf_color[p], 0,
                             "point " + std::to_string(p) + " has an invalid color");
        }
    }
    {
        std::vector<bool> seen(n, false);
        for (auto idx : h.preorder) {
            if (idx >= n || seen[idx]) {
                return violation(Kind::malformed, 0, 0, "pre-order array is not a permutation of the points");
            }
            seen[idx] = true;
        }
    }
    Color cycle_at = 0;
    auto depth = color_depths(h.parent, &cycle_at);
    if (!depth) {
        return violation(Kind::malformed, cycle_at, 0, "color tree has a cycle through color " + std::to_string(cycle_at));
    }

    for (Color c = 1; c <= num_colors; ++c) {
        const auto& iv = h.intervals[c];
        if (iv.first < 1 || iv.first > iv.last || iv.last > n) {
            return violation(Kind::interval_out_of_bounds, c, 0,
                             "interval of color " + std::to_string(c) + " is out of bounds");
        }
    }

    // Laminarity: sweep intervals by (first asc, last desc) keeping the chain
    // of open enclosing intervals on a stack.
    {
        std::vector<Color> order(num_colors);
        std::iota(order.begin(), order.end(), Color{1});
        std::sort(order.begin(), order.end(), [&](Color a, Color b) {
            const auto& x = h.intervals[a];
            const auto& y = h.intervals[b];
            if (x.first != y.first) return x.first < y.first;
            if (x.last != y.last) return x.last > y.last;
            return a < b;
        });
        std::vector<Color> stack;
        for (Color c : order) {
            const auto& iv = h.intervals[c];
            while (!stack.empty() && h.intervals[stack.back()].last < iv.first) {
                stack.pop_back();
            }
            if (!stack.empty()) {
                const Color top = stack.back();
                const auto& tv = h.intervals[top];
                if (tv == iv) {
                    return violation(Kind::duplicate_point_sets, top, c, pair_str(top, c) + " have identical point sets");
                }
                if (tv.last < iv.last) {
                    return violation(Kind::overlapping_colors, top, c,
                                     pair_str(top, c) + " overlap without nesting");
                }
            }
            stack.push_back(c);
        }
    }

    for (Color c = 1; c <= num_colors; ++c) {
        const Color p = h.parent[c];
        if (p != 0 && !h.intervals[p].contains(h.intervals[c])) {
            return violation(Kind::child_outside_parent, p, c,
                             "interval of color " + std::to_string(c) + " is not inside its parent " + std::to_string(p));
        }
    }

    // Each interval must be exactly the ranks of points in the color's subtree.
    {
        std::vector<std::size_t> rank_of(n);
        for (std::size_t r = 0; r < n; ++r) {
            rank_of[h.preorder[r]] = r + 1;
        }
        std::vector<std::size_t> lo(num_colors + 1, n + 1), hi(num_colors + 1, 0), count(num_colors + 1, 0);
        for (std::size_t p = 0; p < n; ++p) {
            const Color c = h.leaf_color[p];
            lo[c] = std::min(lo[c], rank_of[p]);
            hi[c] = std::max(hi[c], rank_of[p]);
            ++count[c];
        }
        std::vector<Color> by_depth(num_colors);
        std::iota(by_depth.begin(), by_depth.end(), Color{1});
        std::sort(by_depth.begin(), by_depth.end(), [&](Color a, Color b) { return (*depth)[a] > (*depth)[b]; });
        for (Color c : by_depth) {
            const Color p = h.parent[c];
            if (p != 0) {
                lo[p] = std::min(lo[p], lo[c]);
                hi[p] = std::max(hi[p], hi[c]);
                count[p] += count[c];
            }
        }
        for (Color c = 1; c <= num_colors; ++c) {
            const auto& iv = h.intervals[c];
            if (count[c] == 0 || lo[c] != iv.first || hi[c] != iv.last || count[c] != iv.length()) {
                return violation(Kind::interval_mismatch, c, 0,
                                 "interval of color " + std::to_string(c) + " does not match its point set");
            }
        }
    }
    return std::nullopt;
}

ColorHierarchy ColorHierarchy::from_tree(std::span<const Position> positions,
                                         std::span<const Color> leaf_color,
                                         std::span<const Color> parent) {
    if (positions.empty()) {
        throw InvalidInput("hierarchy has no points");
    }
    if (leaf_color.size() != positions.size()) {
        throw InvalidInput("every point needs exactly one leaf color");
    }
    if (parent.empty()) {
        throw InvalidInput("hierarchy has no colors");
    }
    const Color num_colors = static_cast<Color>(parent.size() - 1);

    ColorHierarchy h;
    h.parent.assign(parent.begin(), parent.end());
    h.parent[0] = 0;
    h.positions.assign(positions.begin(), positions.end());
    h.leaf_color.assign(leaf_color.begin(), leaf_color.end());
    h.intervals.assign(parent.size(), ColorInterval{});

    std::vector<std::vector<Color>> children(parent.size());
    for (Color c = 1; c <= num_colors; ++c) {
        if (h.parent[c] > num_colors || h.parent[c] == c) {
            throw InvalidInput("color " + std::to_string(c) + " has an invalid parent");
        }
        children[h.parent[c]].push_back(c);
    }
    std::vector<std::vector<std::size_t>> own(parent.size());
    for (std::size_t p = 0; p < positions.size(); ++p) {
        if (leaf_color[p] == 0 || leaf_color[p] > num_colors) {
            throw InvalidInput("point " + std::to_string(p) + " has an invalid color");
        }
        own[leaf_color[p]].push_back(p);
    }

    // Iterative pre-order from the dummy root 0.
    struct Frame {
        Color color;
        std::size_t next_child;
    };
    std::vector<Frame> stack{{0, 0}};
    std::vector<bool> visited(parent.size(), false);
    visited[0] = true;
    h.preorder.reserve(positions.size());
    while (!stack.empty()) {
        auto& top = stack.back();
        if (top.next_child == 0 && top.color != 0) {
            h.intervals[top.color].first = h.preorder.size() + 1;
            for (auto p : own[top.color]) {
                h.preorder.push_back(p);
            }
        }
        if (top.next_child < children[top.color].size()) {
            const Color child = children[top.color][top.next_child++];
            visited[child] = true;
            stack.push_back({child, 0});
        } else {
            if (top.color != 0) {
                if (h.preorder.size() + 1 == h.intervals[top.color].first) {
                    throw InvalidInput("color " + std::to_string(top.color) + " has no points");
                }
                h.intervals[top.color].last = h.preorder.size();
            }
            stack.pop_back();
        }
    }
    for (Color c = 1; c <= num_colors; ++c) {
        if (!visited[c]) {
            throw InvalidInput("color tree has a cycle through color " + std::to_string(c));
        }
    }
    if (auto v = validate_hierarchy(h)) {
        throw InvalidInput(v->message);
    }
    return h;
}

}
