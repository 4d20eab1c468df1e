#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "antilearn/dataset.hpp"

namespace antilearn {

// Square {-1,+1} matrix; every pair of distinct rows agrees in exactly
// order/2 columns. Entries are stored row-major.
struct HadamardMatrix {
    std::size_t order = 0;
    std::vector<std::int8_t> cells;

    int at(std::size_t row, std::size_t col) const {
        return cells[row * order + col];
    }
};

inline constexpr std::size_t kDefaultHadamardOrderCap = 4096;

// Sylvester doubling H_{2n} = [[H_n, H_n], [H_n, -H_n]] starting from [[1]].
// Throws std::length_error when 2^k exceeds the cap.
HadamardMatrix sylvester_hadamard(unsigned k, std::size_t order_cap = kDefaultHadamardOrderCap);

// Dataset view of sylvester_hadamard(k): the first n-1 entries of each row
// are the features, the final entry the label (+1 -> 1, -1 -> 0). Named
// "hadamard-<n>". k must be >= 1 so at least one feature column exists.
BinaryDataset hadamard_dataset(unsigned k, std::size_t order_cap = kDefaultHadamardOrderCap);

// Plain-text portable graymap (P2), one pixel per entry: +1 -> 255, -1 -> 0.
void render_matrix_pgm(const HadamardMatrix& matrix, const std::filesystem::path& path);

}  // namespace antilearn
