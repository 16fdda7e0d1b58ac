#include "topnet/gf2.hpp"

#include <stdexcept>

namespace topnet {

int GF2Matrix::rank() const {
    std::vector<std::vector<std::uint64_t>> rows(rows_);
    for (int r = 0; r < rows_; ++r)
        rows[r].assign(bits_.begin() + static_cast<std::ptrdiff_t>(r) * words_per_row_,
                       bits_.begin() + static_cast<std::ptrdiff_t>(r + 1) * words_per_row_);
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        const int word = c / 64;
        const std::uint64_t mask = 1ULL << (c % 64);
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (rows[r][word] & mask) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < rows_; ++r) {
            if (r == rank || !(rows[r][word] & mask)) continue;
            for (int w = word; w < words_per_row_; ++w) rows[r][w] ^= rows[rank][w];
        }
        ++rank;
    }
    return rank;
}

GF2Matrix GF2Matrix::multiply(const GF2Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("GF2Matrix::multiply: dimension mismatch");
    GF2Matrix out(rows_, other.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k)
            if (get(r, k))
                for (int w = 0; w < other.words_per_row_; ++w)
                    out.bits_[static_cast<std::size_t>(r) * out.words_per_row_ + w] ^=
                        other.bits_[static_cast<std::size_t>(k) * other.words_per_row_ + w];
    return out;
}

bool GF2Matrix::is_zero() const {
    for (std::uint64_t w : bits_)
        if (w) return false;
    return true;
}

}  // namespace topnet
