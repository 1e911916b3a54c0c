#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chroma/graphs.hpp"

namespace chroma {

using Color = std::uint16_t;

// A map V -> [0, q), bound to a graph by fingerprint. Properness is not an
// invariant of the type; see is_proper.
class Coloring {
public:
    Coloring() = default;
    // Checks the color range only. graph_id may be empty (unbound).
    Coloring(std::uint32_t q, std::vector<Color> colors, std::string graph_id);

    static Coloring bind(const RegularGraph& g, std::uint32_t q, std::vector<Color> colors);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t size() const noexcept { return colors_.size(); }
    std::span<const Color> colors() const noexcept { return colors_; }
    Color operator[](std::size_t v) const { return colors_[v]; }
    const std::string& graph_id() const noexcept { return graph_id_; }

    bool operator==(const Coloring&) const = default;

private:
    std::uint32_t q_ = 0;
    std::vector<Color> colors_;
    std::string graph_id_;
};

struct ProperCheck {
    bool proper = true;
    std::optional<Edge> violation;  // first monochromatic edge in edge-id order
};

// M[a][b] = #{v : X(v) = a, Y(v) = b}.
class AgreementMatrix {
public:
    AgreementMatrix(std::uint32_t q, std::vector<std::uint64_t> counts)
        : q_(q), counts_(std::move(counts)) {}

    std::uint32_t q() const noexcept { return q_; }
    std::uint64_t at(Color a, Color b) const { return counts_[static_cast<std::size_t>(a) * q_ + b]; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::uint64_t total() const;

private:
    std::uint32_t q_;
    std::vector<std::uint64_t> counts_;
};

enum class DistanceMethod { kAuto, kBruteForce, kAssignment };

// sigma maps colors of Y onto colors of X: the distance is the Hamming
// distance between X and sigma(Y). Among optimal relabelings the
// lexicographically smallest sigma is returned.
struct ColoringDistance {
    std::uint64_t distance = 0;
    std::vector<Color> sigma;
};

inline constexpr std::uint32_t kBruteForceMaxQ = 8;

ProperCheck is_proper(const RegularGraph& g, const Coloring& x);
AgreementMatrix agreement_matrix(const Coloring& x, const Coloring& y);
ColoringDistance distance(const Coloring& x, const Coloring& y, DistanceMethod method = DistanceMethod::kAuto);

// sigma(X): every vertex color c becomes sigma[c].
Coloring relabel(const Coloring& x, std::span<const Color> sigma);

// Deterministic gadget rule given the base-vertex colors.
Coloring gadget_coloring_from_base(const RegularGraph& g, std::uint32_t q, std::span<const Color> base_colors);
Coloring sample_gadget_coloring(const RegularGraph& g, std::uint32_t q, std::uint64_t seed);

Coloring sample_bipartite_biased(const RegularGraph& g, std::uint32_t q, double tau, std::uint64_t seed);

std::pair<Coloring, Coloring> layered_bipartite_pair(const RegularGraph& g, std::uint32_t q);

// X_i(a_1..a_N) = a_i on a graph built by tensor_power.
std::vector<Coloring> coordinate_colorings(const RegularGraph& tensor_graph);

Coloring lift_coloring(const Coloring& x, const RegularGraph& lifted);

// All proper colorings in lexicographic order of the color vector.
std::vector<Coloring> enumerate_proper(const RegularGraph& g, std::uint32_t q,
                                       std::uint32_t vertex_cap = 16,
                                       std::size_t count_cap = 5'000'000);

}  // namespace chroma
