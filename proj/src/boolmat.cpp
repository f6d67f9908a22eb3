#include "cdok/boolmat.hpp"

#include <bit>
#include <string>

#include "cdok/core.hpp"

namespace cdok {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + kWordBits - 1) / kWordBits), data_(rows * words_, 0) {}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto r = row(i);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits != 0) {
                const std::size_t j = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                t.set(j, i);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

std::size_t BitMatrix::count() const {
    std::size_t total = 0;
    for (auto w : data_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

namespace {

void check_dims(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

// First inner index where both rows have a 1, or npos.
inline std::size_t first_common(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y) {
    for (std::size_t w = 0; w < x.size(); ++w) {
        const std::uint64_t both = x[w] & y[w];
        if (both != 0) {
            return w * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(both));
        }
    }
    return static_cast<std::size_t>(-1);
}

// Row i of the product is the OR of rows b[k] over the set bits k of a[i],
// taken in increasing k; a bit is witnessed by the k that first sets it.
template <bool kWithWitness>
void or_accumulate(const BitMatrix& a, const BitMatrix& b, BitMatrix& out, WitnessMatrix* witness) {
    const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto ar = a.row(i);
        auto orow = out.row(i);
        for (std::size_t kw = 0; kw < ar.size(); ++kw) {
            std::uint64_t ks = ar[kw];
            while (ks != 0) {
                const std::size_t k = kw * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(ks));
                ks &= ks - 1;
                const auto brow = b.row(k);
                for (std::size_t w = 0; w < brow.size(); ++w) {
                    if constexpr (kWithWitness) {
                        std::uint64_t fresh = brow[w] & ~orow[w];
                        while (fresh != 0) {
                            witness->set(i, w * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(fresh)), k);
                            fresh &= fresh - 1;
                        }
                    }
                    orow[w] |= brow[w];
                }
            }
        }
    }
}

}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    check_dims(a, b);
    BitMatrix out(a.rows(), b.cols());
    or_accumulate<false>(a, b, out, nullptr);
    return out;
}

WitnessedProduct mul_with_witness(const BitMatrix& a, const BitMatrix& b) {
    check_dims(a, b);
    WitnessedProduct res{BitMatrix(a.rows(), b.cols()), WitnessMatrix(a.rows(), b.cols())};
    or_accumulate<true>(a, b, res.product, &res.witness);
    return res;
}

namespace serial {

namespace {

template <bool kWithWitness>
void dot_products(const BitMatrix& a, const BitMatrix& b, BitMatrix& out, WitnessMatrix* witness) {
    const BitMatrix bt = b.transposed();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const std::size_t k = first_common(a.row(i), bt.row(j));
            if (k == static_cast<std::size_t>(-1)) {
                continue;
            }
            out.set(i, j);
            if constexpr (kWithWitness) {
                witness->set(i, j, k);
            }
        }
    }
}

}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    check_dims(a, b);
    BitMatrix out(a.rows(), b.cols());
    dot_products<false>(a, b, out, nullptr);
    return out;
}

WitnessedProduct mul_with_witness(const BitMatrix& a, const BitMatrix& b) {
    check_dims(a, b);
    WitnessedProduct res{BitMatrix(a.rows(), b.cols()), WitnessMatrix(a.rows(), b.cols())};
    dot_products<true>(a, b, res.product, &res.witness);
    return res;
}

}

}
