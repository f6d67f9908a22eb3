#include "cdok/nns.hpp"

#include <algorithm>

namespace cdok {

NnsIndex::NnsIndex(std::vector<Position> positions) : sorted_(std::move(positions)) {
    if (sorted_.empty()) {
        throw InvalidInput("nearest-neighbor index over an empty set");
    }
    std::sort(sorted_.begin(), sorted_.end());
    sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
}

Neighbor NnsIndex::nearest(Position q) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), q);
    if (it == sorted_.end()) {
        return {sorted_.back(), q - sorted_.back()};
    }
    if (it == sorted_.begin() || *it == q) {
        return {*it, *it - q};
    }
    const Position below = *(it - 1);
    const Position above = *it;
    // ties go to the smaller point
    if (q - below <= above - q) {
        return {below, q - below};
    }
    return {above, above - q};
}

}
