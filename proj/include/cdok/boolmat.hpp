#ifndef cdok_boolmat_hpp
#define cdok_boolmat_hpp

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace cdok {

/*
 * Row-major Boolean matrix packed into 64-bit words. Bits past cols() in the
 * last word of each row are always zero. Indices are 0-based.
 */
class BitMatrix {
public:
    static constexpr std::size_t kWordBits = 64;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_; }

    bool get(std::size_t i, std::size_t j) const {
        return (data_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool value = true) {
        auto& w = data_[i * words_ + j / kWordBits];
        const std::uint64_t mask = std::uint64_t{1} << (j % kWordBits);
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<const std::uint64_t> row(std::size_t i) const { return {data_.data() + i * words_, words_}; }
    std::span<std::uint64_t> row(std::size_t i) { return {data_.data() + i * words_, words_}; }

    BitMatrix transposed() const;
    std::size_t count() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Per-entry witness of a Boolean product: an inner index k with
/// a[i,k] = b[k,j] = 1, or nothing for 0-entries.
class WitnessMatrix {
public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    WitnessMatrix() = default;
    WitnessMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, kNone) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::optional<std::size_t> at(std::size_t i, std::size_t j) const {
        const auto k = data_[i * cols_ + j];
        return k == kNone ? std::nullopt : std::optional<std::size_t>(k);
    }
    void set(std::size_t i, std::size_t j, std::size_t k) { data_[i * cols_ + j] = static_cast<std::uint32_t>(k); }

    friend bool operator==(const WitnessMatrix&, const WitnessMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> data_;
};

struct WitnessedProduct {
    BitMatrix product;
    WitnessMatrix witness;
};

/// Boolean product a * b. Row i is the word-wise OR of rows b[k] over the
/// set bits k of row a[i]; output rows run in parallel. Throws
/// DimensionError unless a.cols() == b.rows().
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);

/// Same product, also recording the smallest witness k of every 1-entry.
WitnessedProduct mul_with_witness(const BitMatrix& a, const BitMatrix& b);

namespace serial {

/// Single-threaded reference: b is transposed and each output bit is the
/// first common set bit of a row of a and a row of b^T. Kept for tests and
/// the kernel benchmark.
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
WitnessedProduct mul_with_witness(const BitMatrix& a, const BitMatrix& b);

}

/*
 * Extension point for the product used by the E* construction. The default
 * is the combinatorial packed kernel above; a fast-matrix-multiplication
 * backend would implement the same two calls.
 */
class BoolMultiplier {
public:
    virtual ~BoolMultiplier() = default;
    virtual BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) const = 0;
    virtual WitnessedProduct multiply_with_witness(const BitMatrix& a, const BitMatrix& b) const = 0;
};

class PackedMultiplier final : public BoolMultiplier {
public:
    BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) const override { return mul(a, b); }
    WitnessedProduct multiply_with_witness(const BitMatrix& a, const BitMatrix& b) const override {
        return mul_with_witness(a, b);
    }
};

class SerialMultiplier final : public BoolMultiplier {
public:
    BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) const override { return serial::mul(a, b); }
    WitnessedProduct multiply_with_witness(const BitMatrix& a, const BitMatrix& b) const override {
        return serial::mul_with_witness(a, b);
    }
};

}

#endif /* cdok_boolmat_hpp */
