#ifndef TOPNET_GF2_HPP
#define TOPNET_GF2_HPP

#include <cstdint>
#include <vector>

namespace topnet {

/** Dense matrix over the two-element field, rows packed 64 bits per word. */
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
          bits_(static_cast<std::size_t>(rows) * words_per_row_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (bits_[static_cast<std::size_t>(r) * words_per_row_ + c / 64] >> (c % 64)) & 1ULL;
    }

    void set(int r, int c, bool v) {
        std::uint64_t& w = bits_[static_cast<std::size_t>(r) * words_per_row_ + c / 64];
        const std::uint64_t mask = 1ULL << (c % 64);
        if (v) w |= mask;
        else w &= ~mask;
    }

    /** Rank by in-place Gaussian elimination on a copy; O(r c^2 / 64). */
    int rank() const;

    /** Product over GF(2); dimensions must chain. */
    GF2Matrix multiply(const GF2Matrix& other) const;

    bool is_zero() const;

private:
    int rows_ = 0, cols_ = 0, words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace topnet

#endif  // TOPNET_GF2_HPP
