#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chroma {

// Dense undirected graph over bit rows, for the exact clique search.
class BitGraph {
public:
    explicit BitGraph(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    void add_edge(std::size_t a, std::size_t b);
    bool adjacent(std::size_t a, std::size_t b) const {
        return (rows_[a * words_ + b / 64] >> (b % 64)) & 1u;
    }
    const std::uint64_t* row(std::size_t a) const { return rows_.data() + a * words_; }
    std::size_t words() const noexcept { return words_; }
    std::size_t degree(std::size_t a) const;

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
};

// Exact maximum clique: branch and bound with a greedy-coloring bound over
// a degeneracy vertex order. Returns the clique's vertices sorted.
std::vector<std::size_t> maximum_clique(const BitGraph& g);

}  // namespace chroma
