#include "chroma/clique.hpp"

#include <algorithm>
#include <bit>

namespace chroma {

BitGraph::BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

void BitGraph::add_edge(std::size_t a, std::size_t b) {
    if (a == b) return;
    rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    rows_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
}

std::size_t BitGraph::degree(std::size_t a) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(rows_[a * words_ + w]));
    return d;
}

namespace {

// Vertices are renumbered by `order`; position i in the search is
// order[i]. Candidate sets are bitsets over positions.
class CliqueSearch {
public:
    CliqueSearch(const BitGraph& g, std::vector<std::size_t> order)
        : order_(std::move(order)), n_(order_.size()), words_((n_ + 63) / 64), adj_(n_ * words_, 0) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && g.adjacent(order_[i], order_[j])) adj_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }

    std::vector<std::size_t> run() {
        std::vector<std::uint64_t> all(words_, 0);
        for (std::size_t i = 0; i < n_; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
        current_.clear();
        best_.clear();
        expand(all);
        std::vector<std::size_t> out;
        for (std::size_t p : best_) out.push_back(order_[p]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    // Greedy sequential coloring of the candidates in position order;
    // returns candidates sorted by color with their color numbers.
    void color_sort(const std::vector<std::uint64_t>& cand, std::vector<std::size_t>& verts,
                    std::vector<std::size_t>& colors) const {
        verts.clear();
        colors.clear();
        std::vector<std::uint64_t> uncolored = cand;
        std::size_t color = 0;
        while (std::any_of(uncolored.begin(), uncolored.end(), [](std::uint64_t w) { return w != 0; })) {
            ++color;
            std::vector<std::uint64_t> q = uncolored;
            for (std::size_t w = 0; w < words_; ++w) {
                while (q[w]) {
                    const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
                    q[w] &= q[w] - 1;
                    uncolored[w] &= ~(std::uint64_t{1} << (v % 64));
                    for (std::size_t k = w; k < words_; ++k) q[k] &= ~adj_[v * words_ + k];
                    verts.push_back(v);
                    colors.push_back(color);
                }
            }
        }
    }

    void expand(std::vector<std::uint64_t> cand) {
        std::vector<std::size_t> verts, colors;
        color_sort(cand, verts, colors);
        for (std::size_t k = verts.size(); k-- > 0;) {
            if (current_.size() + colors[k] <= best_.size()) return;
            const std::size_t v = verts[k];
            current_.push_back(v);
            std::vector<std::uint64_t> next(words_);
            bool any = false;
            for (std::size_t w = 0; w < words_; ++w) {
                next[w] = cand[w] & adj_[v * words_ + w];
                any |= next[w] != 0;
            }
            if (any) {
                expand(std::move(next));
            } else if (current_.size() > best_.size()) {
                best_ = current_;
            }
            current_.pop_back();
            cand[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }

    std::vector<std::size_t> order_;
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

// Degeneracy order, highest-core vertices first so that they are colored
// early and expanded last.
std::vector<std::size_t> degeneracy_order(const BitGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<char> removed(n, 0);
    std::vector<std::size_t> peel;
    peel.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v] && (pick == n || deg[v] < deg[pick])) pick = v;
        removed[pick] = 1;
        peel.push_back(pick);
        for (std::size_t w = 0; w < n; ++w)
            if (!removed[w] && g.adjacent(pick, w)) --deg[w];
    }
    std::reverse(peel.begin(), peel.end());
    return peel;
}

}  // namespace

std::vector<std::size_t> maximum_clique(const BitGraph& g) {
    if (g.size() == 0) return {};
    CliqueSearch search(g, degeneracy_order(g));
    return search.run();
}

}  // namespace chroma
