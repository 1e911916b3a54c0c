#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chroma {

using Vertex = std::uint32_t;

// Undirected edge, stored canonically with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    auto operator<=>(const Edge&) const = default;
};

// One K_{3,3} minus uv spliced into base edge xy. x_side is the part that
// contains u and is joined to x; y_side contains v and is joined to y.
struct GadgetBlock {
    Vertex x = 0;
    Vertex y = 0;
    std::array<Vertex, 3> x_side{};
    std::array<Vertex, 3> y_side{};
};

struct TensorInfo {
    std::uint32_t q = 0;
    std::uint32_t power = 0;
};

struct GadgetInfo {
    std::uint32_t base_vertices = 0;
    std::vector<GadgetBlock> blocks;  // canonical base-edge order
};

struct LiftInfo {
    std::string parent_fingerprint;
    std::uint32_t parent_vertices = 0;
};

// Construction provenance. Not part of the graph's identity.
struct GraphMeta {
    std::string construction = "edges";
    std::optional<TensorInfo> tensor;
    std::optional<GadgetInfo> gadget;
    std::optional<LiftInfo> lift;
};

// Simple d-regular graph. Immutable once built; every public constructor
// goes through the same validator.
class RegularGraph {
public:
    // Validates vertex range, loops, duplicates, uniform degree and (when
    // given) that every edge crosses the bipartition.
    static RegularGraph from_edges(std::uint32_t n, std::span<const Edge> edges,
                                   std::optional<std::vector<std::uint8_t>> part_labels = {},
                                   GraphMeta meta = {});

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::uint32_t degree() const noexcept { return d_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Sorted neighbor list.
    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + static_cast<std::size_t>(v) * d_, d_};
    }

    // Canonical edge list, sorted; the index of an edge is its edge id.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::optional<std::size_t> edge_id(Vertex a, Vertex b) const;
    bool has_edge(Vertex a, Vertex b) const;

    const std::optional<std::vector<std::uint8_t>>& part_labels() const noexcept { return parts_; }
    const GraphMeta& meta() const noexcept { return meta_; }

    // Stable 16-hex-digit hash of (n, d, edge list).
    const std::string& fingerprint() const noexcept { return fingerprint_; }

    bool is_connected() const;

private:
    RegularGraph() = default;

    std::uint32_t n_ = 0;
    std::uint32_t d_ = 0;
    std::vector<Vertex> adjacency_;
    std::vector<Edge> edges_;
    std::optional<std::vector<std::uint8_t>> parts_;
    GraphMeta meta_;
    std::string fingerprint_;
};

// Edge signing keyed by canonical edge id; entries are -1 or +1.
struct Signing {
    std::vector<std::int8_t> signs;
    auto operator<=>(const Signing&) const = default;
};

struct VertexSubsetMeasures {
    double w = 0.0;         // |A| / |V|
    double e_within = 0.0;  // |E(A)| / |E|
    double e_cross = 0.0;   // |E(A, B)| / |E|
    std::size_t size = 0;
    std::size_t edges_within = 0;
    std::size_t edges_cross = 0;
};

struct EdgeExpansion {
    double h = 0.0;
    std::size_t cut = 0;       // |E(S, V \ S)| of the witness
    std::vector<Vertex> witness;  // |S| <= n / 2
};

struct SigningSearchResult {
    Signing signing;
    double lambda2 = 1.0;  // second eigenvalue of the lift
};

struct BipartiteOptions {
    // Whole attempts for the pure rejection model, or switch moves for the
    // repair model.
    std::size_t budget = 1'000'000;
    // Pure rejection is used while d <= this; above it the chance of a
    // collision-free union of d permutations is roughly exp(-d(d-1)/2).
    std::uint32_t rejection_max_degree = 4;
};

RegularGraph complete_graph(std::uint32_t q);
RegularGraph cycle_graph(std::uint32_t n);
RegularGraph tensor_power(std::uint32_t q, std::uint32_t power, std::uint64_t vertex_cap = 4096);
RegularGraph gadget_expand(const RegularGraph& base);
RegularGraph random_regular_bipartite(std::uint32_t half, std::uint32_t d, std::uint64_t seed,
                                      const BipartiteOptions& options = {});
RegularGraph two_lift(const RegularGraph& g, const Signing& signing);

Signing uniform_signing(const RegularGraph& g, std::int8_t sign);

// Randomized restarts with first-improvement single-edge flips on the
// largest eigenvalue of the signed normalized adjacency. Restarts run on
// `threads` workers; the result is independent of the worker count.
SigningSearchResult search_low_lambda_signing(const RegularGraph& g, std::uint32_t restarts,
                                              std::uint64_t seed, unsigned threads = 1);

EdgeExpansion edge_expansion_exact(const RegularGraph& g, std::uint32_t vertex_cap = 24);

// Without `b` the cross term is measured against the complement of `a`.
VertexSubsetMeasures subset_measures(const RegularGraph& g, std::span<const Vertex> a,
                                     std::optional<std::span<const Vertex>> b = std::nullopt);

}  // namespace chroma
