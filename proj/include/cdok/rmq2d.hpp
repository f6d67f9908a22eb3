#ifndef cdok_rmq2d_hpp
#define cdok_rmq2d_hpp

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cdok/core.hpp"

namespace cdok {

/*
 * Static 2D range-minimum over an r x c grid of (value, payload) cells.
 *
 * Sparse table squared: for every pair of powers (2^a, 2^b) we keep, per
 * top-left cell, the argmin of the 2^a x 2^b rectangle anchored there. A
 * query covers its rectangle with four overlapping such rectangles, O(1).
 * Space is O(r c log r log c). Rows and columns are 1-based; ties resolve to
 * the lexicographically smallest (row, col).
 */
template <class Payload>
class Rmq2d {
public:
    struct Cell {
        Distance value = kInfinity;
        Payload payload{};

        friend bool operator==(const Cell&, const Cell&) = default;
    };

    struct Result {
        Distance value;
        std::size_t row;
        std::size_t col;
        Payload payload;
    };

    Rmq2d() = default;

    Rmq2d(std::size_t rows, std::size_t cols, std::vector<Cell> cells)
        : rows_(rows), cols_(cols), cells_(std::move(cells)) {
        if (rows_ == 0 || cols_ == 0 || cells_.size() != rows_ * cols_) {
            throw InvalidInput("2D range-minimum index needs a non-empty, fully populated grid");
        }
        row_levels_ = static_cast<std::size_t>(std::bit_width(rows_));
        col_levels_ = static_cast<std::size_t>(std::bit_width(cols_));
        tables_.resize(row_levels_ * col_levels_);

        auto& base = table(0, 0);
        base.resize(rows_ * cols_);
        for (std::size_t k = 0; k < base.size(); ++k) {
            base[k] = static_cast<std::uint32_t>(k);
        }
        for (std::size_t b = 1; b < col_levels_; ++b) {
            const auto& prev = table(0, b - 1);
            auto& cur = table(0, b);
            cur.assign(rows_ * cols_, 0);
            const std::size_t half = std::size_t{1} << (b - 1);
            const std::size_t span_cols = std::size_t{1} << b;
#pragma omp parallel for schedule(static)
            for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows_); ++r) {
                for (std::size_t c = 0; c + span_cols <= cols_; ++c) {
                    const std::size_t at = static_cast<std::size_t>(r) * cols_ + c;
                    cur[at] = better(prev[at], prev[at + half]);
                }
            }
        }
        for (std::size_t a = 1; a < row_levels_; ++a) {
            const std::size_t half = (std::size_t{1} << (a - 1)) * cols_;
            const std::size_t span_rows = std::size_t{1} << a;
            for (std::size_t b = 0; b < col_levels_; ++b) {
                const auto& prev = table(a - 1, b);
                auto& cur = table(a, b);
                cur.assign(rows_ * cols_, 0);
                const std::size_t span_cols = std::size_t{1} << b;
#pragma omp parallel for schedule(static)
                for (std::int64_t r = 0; r <= static_cast<std::int64_t>(rows_ - span_rows); ++r) {
                    for (std::size_t c = 0; c + span_cols <= cols_; ++c) {
                        const std::size_t at = static_cast<std::size_t>(r) * cols_ + c;
                        cur[at] = better(prev[at], prev[at + half]);
                    }
                }
            }
        }
    }

    Result rect_min(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) const {
        if (r1 < 1 || c1 < 1 || r1 > r2 || c1 > c2 || r2 > rows_ || c2 > cols_) {
            throw InvalidRange("rectangle (" + std::to_string(r1) + "," + std::to_string(c1) + ")-(" +
                               std::to_string(r2) + "," + std::to_string(c2) + ") is empty or out of bounds");
        }
        const std::size_t a = static_cast<std::size_t>(std::bit_width(r2 - r1 + 1)) - 1;
        const std::size_t b = static_cast<std::size_t>(std::bit_width(c2 - c1 + 1)) - 1;
        const auto& t = table(a, b);
        const std::size_t top = r1 - 1;
        const std::size_t left = c1 - 1;
        const std::size_t bottom = r2 - (std::size_t{1} << a);
        const std::size_t right = c2 - (std::size_t{1} << b);
        std::uint32_t best = better(better(t[top * cols_ + left], t[top * cols_ + right]),
                                    better(t[bottom * cols_ + left], t[bottom * cols_ + right]));
        const auto& cell = cells_[best];
        return {cell.value, best / cols_ + 1, best % cols_ + 1, cell.payload};
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    /// Cell at 1-based (row, col).
    const Cell& at(std::size_t row, std::size_t col) const { return cells_[(row - 1) * cols_ + (col - 1)]; }
    const std::vector<Cell>& cells() const { return cells_; }

private:
    std::uint32_t better(std::uint32_t x, std::uint32_t y) const {
        const Distance vx = cells_[x].value;
        const Distance vy = cells_[y].value;
        if (vx != vy) {
            return vx < vy ? x : y;
        }
        return x < y ? x : y;
    }

    std::vector<std::uint32_t>& table(std::size_t a, std::size_t b) { return tables_[a * col_levels_ + b]; }
    const std::vector<std::uint32_t>& table(std::size_t a, std::size_t b) const {
        return tables_[a * col_levels_ + b];
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t row_levels_ = 0;
    std::size_t col_levels_ = 0;
    std::vector<Cell> cells_;
    std::vector<std::vector<std::uint32_t>> tables_;
};

}

#endif /* cdok_rmq2d_hpp */
