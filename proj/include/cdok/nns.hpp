#ifndef cdok_nns_hpp
#define cdok_nns_hpp

#include <concepts>
#include <span>
#include <vector>

#include "cdok/core.hpp"

namespace cdok {

struct Neighbor {
    Position point;
    Distance distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Anything answering nearest(q) over a static set can back the per-color
/// indexes of the oracles.
template <class T>
concept NearestNeighborIndex = requires(const T& index, Position q) {
    { index.nearest(q) } -> std::same_as<Neighbor>;
};

/*
 * Static nearest-neighbor index over integer positions: a sorted array with
 * binary search. Equidistant neighbors resolve to the smaller position.
 */
class NnsIndex {
public:
    NnsIndex() = default;
    /// Throws InvalidInput if `positions` is empty. Duplicates are dropped.
    explicit NnsIndex(std::vector<Position> positions);

    Neighbor nearest(Position q) const;

    std::span<const Position> positions() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<Position> sorted_;
};

static_assert(NearestNeighborIndex<NnsIndex>);

}

#endif /* cdok_nns_hpp */
