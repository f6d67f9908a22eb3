#include "cli/io.hpp"

#include <iterator>
#include <sstream>

namespace cdok::cli {

namespace {

// Line reader that skips blanks and comments and tracks line numbers.
class Lines {
public:
    explicit Lines(std::istream& in) : in_(in) {}

    bool next(std::string& out) {
        while (std::getline(in_, out)) {
            ++line_;
            const auto first = out.find_first_not_of(" \t\r");
            if (first == std::string::npos || out[first] == '#') continue;
            return true;
        }
        return false;
    }
    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

std::vector<std::int64_t> numbers(const std::string& text, std::size_t line, std::size_t want) {
    std::istringstream ss(text);
    std::vector<std::int64_t> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw ParseError(line, "'" + tok + "' is not an integer");
        out.push_back(v);
    }
    if (want != 0 && out.size() != want) {
        throw ParseError(line, "expected " + std::to_string(want) + " integers, found " + std::to_string(out.size()));
    }
    return out;
}

}

std::vector<RawPoint> read_points(std::istream& in) {
    Lines lines(in);
    std::vector<RawPoint> out;
    std::string text;
    while (lines.next(text)) {
        const auto v = numbers(text, lines.line(), 2);
        if (v[1] <= 0) throw ParseError(lines.line(), "color ids must be positive");
        out.push_back({v[0], v[1]});
    }
    if (out.empty()) throw InvalidInput("points file has no points");
    return out;
}

HierarchyFile read_hierarchy_file(std::istream& in) {
    Lines lines(in);
    std::string text;
    if (!lines.next(text)) throw InvalidInput("hierarchy file is empty");
    const auto head = numbers(text, lines.line(), 2);
    if (head[0] <= 0 || head[1] <= 0) throw ParseError(lines.line(), "point and color counts must be positive");
    const auto n = static_cast<std::size_t>(head[0]);
    const auto k = static_cast<Color>(head[1]);
    HierarchyFile f;
    f.parent.assign(k + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!lines.next(text)) throw ParseError(lines.line(), "expected " + std::to_string(n) + " point lines");
        const auto v = numbers(text, lines.line(), 2);
        if (v[1] < 1 || v[1] > k) throw ParseError(lines.line(), "leaf color out of range");
        f.positions.push_back(v[0]);
        f.leaf_color.push_back(static_cast<Color>(v[1]));
    }
    std::vector<bool> seen(k + 1, false);
    for (Color i = 0; i < k; ++i) {
        if (!lines.next(text)) throw ParseError(lines.line(), "expected " + std::to_string(k) + " color lines");
        const auto v = numbers(text, lines.line(), 2);
        if (v[0] < 1 || v[0] > k) throw ParseError(lines.line(), "color out of range");
        if (v[1] < 0 || v[1] > k) throw ParseError(lines.line(), "parent out of range");
        if (seen[v[0]]) throw ParseError(lines.line(), "color " + std::to_string(v[0]) + " listed twice");
        seen[v[0]] = true;
        f.parent[v[0]] = static_cast<Color>(v[1]);
    }
    if (lines.next(text)) throw ParseError(lines.line(), "unexpected trailing content");
    return f;
}

LoadedHierarchy resolve_hierarchy(const HierarchyFile& f) {
    const Color k = static_cast<Color>(f.parent.size() - 1);
    std::vector<std::size_t> own(k + 1, 0);
    for (Color c : f.leaf_color) ++own[c];
    std::vector<std::vector<Color>> kids(k + 1);
    for (Color c = 1; c <= k; ++c) {
        if (f.parent[c] == c) throw InvalidInput("color " + std::to_string(c) + " is its own parent");
        kids[f.parent[c]].push_back(c);
    }

    // A pointless color with one child repeats that child's set: follow
    // such chains down to the color that survives.
    std::vector<Color> target(k + 1, 0);
    for (Color c = 1; c <= k; ++c) {
        Color t = c;
        std::size_t steps = 0;
        while (own[t] == 0 && kids[t].size() == 1) {
            t = kids[t].front();
            if (++steps > k) throw InvalidInput("color tree has a cycle");
        }
        target[c] = t;
    }
    LoadedHierarchy out;
    std::vector<Color> dense(k + 1, 0);
    Color next = 0;
    for (Color c = 1; c <= k; ++c) {
        if (target[c] == c) dense[c] = ++next;
    }
    out.alias.assign(k + 1, 0);
    for (Color c = 1; c <= k; ++c) out.alias[c] = dense[target[c]];

    std::vector<Color> parent(next + 1, 0);
    for (Color c = 1; c <= k; ++c) {
        if (target[c] != c) continue;
        // Skip folded ancestors: they share this color's set.
        Color p = f.parent[c];
        std::size_t steps = 0;
        while (p != 0 && target[p] == c) {
            p = f.parent[p];
            if (++steps > k) throw InvalidInput("color tree has a cycle");
        }
        parent[dense[c]] = p == 0 ? 0 : out.alias[p];
    }
    std::vector<Color> leaf(f.leaf_color.size());
    for (std::size_t i = 0; i < leaf.size(); ++i) leaf[i] = out.alias[f.leaf_color[i]];
    out.hierarchy = ColorHierarchy::from_tree(f.positions, leaf, parent);
    return out;
}

MinPlusInstance read_matrices(std::istream& in) {
    Lines lines(in);
    std::string text;
    if (!lines.next(text)) throw InvalidInput("matrix file is empty");
    const auto head = numbers(text, lines.line(), 3);
    if (head[0] <= 0 || head[1] <= 0 || head[2] <= 0) throw ParseError(lines.line(), "dimensions and bound must be positive");
    const auto rows = static_cast<std::size_t>(head[0]);
    const auto inner = static_cast<std::size_t>(head[1]);
    IntMatrix a(rows, inner), b(inner, rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!lines.next(text)) throw ParseError(lines.line(), "missing row " + std::to_string(i + 1) + " of A");
        const auto v = numbers(text, lines.line(), inner);
        for (std::size_t j = 0; j < inner; ++j) a.at(i, j) = v[j];
    }
    if (!lines.next(text) || text.find(';') == std::string::npos) {
        throw ParseError(lines.line(), "expected ';' between A and B");
    }
    for (std::size_t i = 0; i < inner; ++i) {
        if (!lines.next(text)) throw ParseError(lines.line(), "missing row " + std::to_string(i + 1) + " of B");
        const auto v = numbers(text, lines.line(), rows);
        for (std::size_t j = 0; j < rows; ++j) b.at(i, j) = v[j];
    }
    if (lines.next(text)) throw ParseError(lines.line(), "unexpected trailing content");
    return MinPlusInstance::make(std::move(a), std::move(b), head[2]);
}

std::string read_all(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}
