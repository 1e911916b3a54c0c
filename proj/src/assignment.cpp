#include "chroma/assignment.hpp"

#include <algorithm>
#include <limits>

#include "chroma/error.hpp"

namespace chroma {

std::vector<std::size_t> max_weight_assignment(std::span<const std::int64_t> weights, std::size_t n) {
    if (weights.size() != n * n) fail(ErrorCode::kInvalidArgument, "assignment matrix must be n x n");
    if (n == 0) return {};
    const std::int64_t top = *std::max_element(weights.begin(), weights.end());
    auto cost = [&](std::size_t i, std::size_t j) { return top - weights[i * n + j]; };

    // 1-indexed shortest augmenting path formulation; p[j] is the row
    // matched to column j, row 0 is a sentinel.
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            std::int64_t delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> column(n);
    for (std::size_t j = 1; j <= n; ++j) column[p[j] - 1] = j - 1;
    return column;
}

std::int64_t assignment_value(std::span<const std::int64_t> weights, std::size_t n,
                              std::span<const std::size_t> column_of_row) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += weights[i * n + column_of_row[i]];
    return total;
}

}  // namespace chroma
