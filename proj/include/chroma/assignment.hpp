#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chroma {

// Maximum-weight perfect assignment on a dense n x n integer matrix
// (row-major). Returns column[row]. Hungarian method with potentials,
// O(n^3).
std::vector<std::size_t> max_weight_assignment(std::span<const std::int64_t> weights, std::size_t n);

std::int64_t assignment_value(std::span<const std::int64_t> weights, std::size_t n,
                              std::span<const std::size_t> column_of_row);

}  // namespace chroma
