#ifndef cdok_rnns_hpp
#define cdok_rnns_hpp

#include <vector>

#include "cdok/core.hpp"
#include "cdok/nns.hpp"

namespace cdok {

/*
 * Range nearest-neighbor search over a fixed array: nearest value to q among
 * A[i..j] (1-based, closed). Merge-sort tree stored level by level; level k
 * holds the array with every aligned block of 2^k entries sorted. A query
 * splits [i, j] into O(log n) aligned blocks and binary searches each one,
 * O(log^2 n) total. Ties go to the smaller value.
 */
class RnnsIndex {
public:
    RnnsIndex() = default;
    /// Throws InvalidInput on an empty array.
    explicit RnnsIndex(std::vector<Position> values);

    Neighbor range_nearest(std::size_t i, std::size_t j, Position q) const;

    std::size_t size() const { return levels_.empty() ? 0 : levels_.front().size(); }
    /// Value at 1-based rank r.
    Position value_at(std::size_t r) const { return levels_.front()[r - 1]; }

private:
    std::vector<std::vector<Position>> levels_;
};

}

#endif /* cdok_rnns_hpp */
