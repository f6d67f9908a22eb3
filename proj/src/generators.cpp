#include "cli/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <unordered_set>

namespace cdok::gen {

Shape parse_shape(std::string_view name) {
    if (name == "uniform") return Shape::uniform;
    if (name == "clustered") return Shape::clustered;
    if (name == "adversarial" || name == "adversarial_heavy" || name == "adversarial-heavy") {
        return Shape::adversarial_heavy;
    }
    throw InvalidParameter("unknown generator '" + std::string(name) + "'");
}

const char* to_string(Shape shape) {
    switch (shape) {
        case Shape::uniform: return "uniform";
        case Shape::clustered: return "clustered";
        case Shape::adversarial_heavy: return "adversarial_heavy";
    }
    return "?";
}

namespace {

std::uint64_t parse_number(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw InvalidParameter("bad value '" + std::string(v) + "' for " + std::string(key));
    }
    return out;
}

}

PointSpec parse_point_spec(std::string_view text) {
    PointSpec spec;
    const auto colon = text.find(':');
    spec.shape = parse_shape(text.substr(0, colon));
    if (colon == std::string_view::npos) {
        return spec;
    }
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidParameter("expected key=value in '" + std::string(item) + "'");
        }
        const auto key = item.substr(0, eq);
        const auto value = parse_number(key, item.substr(eq + 1));
        if (key == "n") spec.n = value;
        else if (key == "colors") spec.colors = value;
        else if (key == "universe") spec.universe = static_cast<Position>(value);
        else if (key == "seed") spec.seed = value;
        else throw InvalidParameter("unknown generator key '" + std::string(key) + "'");
    }
    return spec;
}

std::vector<RawPoint> points(const PointSpec& spec) {
    if (spec.n == 0 || spec.colors == 0 || spec.colors > spec.n || spec.universe < 1) {
        throw InvalidParameter("generator needs 1 <= colors <= n and a positive universe");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<Position> anywhere(1, spec.universe);
    std::vector<RawPoint> out;
    out.reserve(spec.n);
    const auto k = static_cast<std::int64_t>(spec.colors);

    switch (spec.shape) {
        case Shape::uniform: {
            std::uniform_int_distribution<std::int64_t> color(1, k);
            for (std::size_t i = 0; i < spec.n; ++i) {
                const std::int64_t c = i < spec.colors ? static_cast<std::int64_t>(i) + 1 : color(rng);
                out.push_back({anywhere(rng), c});
            }
            break;
        }
        case Shape::clustered: {
            std::vector<Position> center(spec.colors);
            for (auto& c : center) c = anywhere(rng);
            const double spread = std::max(1.0, static_cast<double>(spec.universe) / (4.0 * static_cast<double>(k)));
            std::normal_distribution<double> jitter(0.0, spread);
            std::uniform_int_distribution<std::int64_t> color(1, k);
            for (std::size_t i = 0; i < spec.n; ++i) {
                const std::int64_t c = i < spec.colors ? static_cast<std::int64_t>(i) + 1 : color(rng);
                const auto p = static_cast<Position>(std::llround(static_cast<double>(center[c - 1]) + jitter(rng)));
                out.push_back({std::clamp<Position>(p, 1, spec.universe), c});
            }
            break;
        }
        case Shape::adversarial_heavy: {
            std::vector<double> weight(spec.colors);
            for (std::size_t c = 0; c < spec.colors; ++c) weight[c] = 1.0 / static_cast<double>(c + 1);
            std::discrete_distribution<std::int64_t> color(weight.begin(), weight.end());
            for (std::size_t i = 0; i < spec.n; ++i) {
                const std::int64_t c = i < spec.colors ? static_cast<std::int64_t>(i) + 1 : color(rng) + 1;
                out.push_back({anywhere(rng), c});
            }
            break;
        }
    }
    return out;
}

ColorHierarchy hierarchy(const HierarchySpec& spec) {
    if (spec.colors == 0 || spec.colors > spec.n || spec.universe < static_cast<Position>(spec.n)) {
        throw InvalidParameter("hierarchy generator needs 1 <= colors <= n <= universe");
    }
    std::mt19937_64 rng(spec.seed);
    // Distinct positions by a partial shuffle of [1, universe].
    std::vector<Position> pos;
    if (spec.universe <= static_cast<Position>(4 * spec.n)) {
        pos.resize(static_cast<std::size_t>(spec.universe));
        for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = static_cast<Position>(i) + 1;
        std::shuffle(pos.begin(), pos.end(), rng);
        pos.resize(spec.n);
    } else {
        std::uniform_int_distribution<Position> anywhere(1, spec.universe);
        std::unordered_set<Position> seen;
        while (pos.size() < spec.n) {
            const Position p = anywhere(rng);
            if (seen.insert(p).second) pos.push_back(p);
        }
    }

    std::vector<Color> parent(spec.colors + 1, 0);
    for (std::size_t c = 2; c <= spec.colors; ++c) {
        std::uniform_int_distribution<std::size_t> up(0, c - 1);
        parent[c] = static_cast<Color>(up(rng));
    }
    std::vector<Color> leaf(spec.n);
    std::uniform_int_distribution<Color> color(1, static_cast<Color>(spec.colors));
    for (std::size_t i = 0; i < spec.n; ++i) {
        leaf[i] = i < spec.colors ? static_cast<Color>(i + 1) : color(rng);
    }
    return ColorHierarchy::from_tree(pos, leaf, parent);
}

std::string text(std::size_t length, std::size_t alphabet, std::uint64_t seed) {
    if (alphabet == 0 || alphabet > 26) {
        throw InvalidParameter("alphabet size must be in [1, 26]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet) - 1);
    std::string out(length, 'a');
    for (auto& ch : out) ch = static_cast<char>('a' + letter(rng));
    return out;
}

IntMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> entry(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
    }
    return m;
}

}
