#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chroma/codes.hpp"
#include "chroma/colorings.hpp"
#include "chroma/graphs.hpp"
#include "chroma/rational.hpp"

namespace chroma {

// ---------------------------------------------------------------------------
// Unique-regime certificate
// ---------------------------------------------------------------------------

struct Certificate {
    bool certified = false;
    Rational lhs;  // (q-1)(1-delta)^2 + (1-(q-1)(1-delta))^2
    Rational rhs;  // 1 - (1 - 1/(q-1)) / (1 - lambda)
};

// Requires 1 - 1/(q-1) <= delta <= 1 - 1/q and 0 < lambda < 1. Strict
// inequality lhs < rhs, evaluated exactly.
Certificate unique_regime_certificate(std::uint32_t q, const Rational& delta, const Rational& lambda);

// 1 - (1/floor(q/2) + 1/ceil(q/2)) / 2.
Rational bipartite_threshold(std::uint32_t q);

// ---------------------------------------------------------------------------
// Overlap profile over all relabelings
// ---------------------------------------------------------------------------

// V_sigma = {v : X(v) = sigma(Y(v))}.
struct SigmaEntry {
    std::vector<Color> sigma;
    std::uint64_t size = 0;
    std::uint64_t cross_edges = 0;
    double w = 0.0;
    double e_cross = 0.0;
    bool inequality_holds = true;  // e_cross >= 2(1 - lambda2)(w - w^2)
};

struct SigmaProfile {
    std::vector<SigmaEntry> entries;  // all q! relabelings, lexicographic order
    double lambda2 = 1.0;
    std::uint64_t distance = 0;
    bool distance_matches = true;  // distance == n - max |V_sigma|
    bool all_hold = true;
};

SigmaProfile sigma_profile(const RegularGraph& g, const Coloring& x, const Coloring& y,
                           std::optional<double> lambda2 = std::nullopt);

// Sum of w over the cyclic-shift orbit {pi^i sigma : 0 <= i < q} of entry
// `index`, pi(c) = c + 1 mod q.
double cyclic_orbit_weight(const SigmaProfile& profile, std::size_t index);

// Lexicographic rank of a permutation of [0, q).
std::size_t permutation_rank(std::span<const Color> perm);

// ---------------------------------------------------------------------------
// Near-independent sets
// ---------------------------------------------------------------------------

struct UnionBound {
    double bound = 0.0;   // 3 max(lambda2, xi) / gamma
    double actual = 0.0;  // e(A u B)
    bool ok = false;
};

UnionBound near_independent_union_bound(const RegularGraph& g, std::span<const Vertex> a,
                                        std::span<const Vertex> b, double gamma, double xi,
                                        std::optional<double> lambda2 = std::nullopt);

struct ColorClass {
    std::vector<Color> alpha;  // (X_1(v), ..., X_K(v))
    std::vector<Vertex> vertices;
    double w = 0.0;
    double e_within = 0.0;
};

struct PartitionComponent {
    std::vector<std::size_t> classes;  // indices into heavy
    double w = 0.0;
    double e_within = 0.0;
    std::size_t edges_within = 0;
};

struct NearIndependentPartition {
    std::vector<ColorClass> heavy;  // w >= gamma, ascending alpha
    std::vector<PartitionComponent> components;
    double light_weight = 0.0;
    std::size_t class_space = 0;    // q^K
    double lambda2 = 1.0;
    // log10 of (3/gamma)^(q^K) * lambda2; reported only.
    double bound_log10 = 0.0;
    bool cross_components_disagree = true;
    bool agreeing_pairs_edge_free = true;
};

NearIndependentPartition near_independent_partition(const RegularGraph& g, const CodeSet& code, double gamma,
                                                    std::size_t class_cap = std::size_t{1} << 20);

struct IndependentSizeCheck {
    double w = 0.0;
    double e = 0.0;
    double bound = 0.0;  // (1 + e) / 2
    bool ok = false;
};

IndependentSizeCheck independent_size_bound(const RegularGraph& g, std::span<const Vertex> a);

// 1 - 1/lambda_min.
double hoffman_bound(const RegularGraph& g);

// ---------------------------------------------------------------------------
// Regime map
// ---------------------------------------------------------------------------

enum class RegimeClass { kCertifiedUnique, kCounterexampleExists, kUnknown };

std::string regime_class_name(RegimeClass c);

struct SweepFamily {
    // "layered-bipartite" (sizes = block size m), "biased-bipartite"
    // (sizes = part size), "gadget" (sizes = half-size of the cubic
    // bipartite base), "tensor-lift" (sizes = number of 2-lifts).
    std::string kind;
    std::vector<std::uint32_t> sizes;
    std::uint32_t degree = 3;
    std::optional<double> tau;
    std::uint32_t power = 2;
    std::uint32_t restarts = 20;
};

struct SweepConfig {
    std::uint32_t q = 3;
    std::vector<Rational> deltas;
    std::vector<Rational> lambdas;
    std::vector<SweepFamily> families;
    std::vector<std::uint64_t> seeds{1};
    std::size_t budget = 64;
    unsigned threads = 1;
};

struct RegimeRow {
    std::uint32_t q = 3;
    Rational delta;
    Rational lambda;
    RegimeClass classification = RegimeClass::kUnknown;
    std::string evidence_kind = "none";
    std::optional<std::uint32_t> n;
    std::optional<double> lambda2_measured;
    std::optional<std::size_t> code_size;
    std::optional<std::uint64_t> min_dist;
};

using GridKey = std::pair<std::string, std::string>;  // canonical delta, lambda

SweepConfig sweep_config_from_json(std::string_view json_text);
SweepConfig default_sweep_config(std::uint32_t q);

// Rows come out in grid order (delta outer, lambda inner). Points in
// `skip` are neither evaluated nor emitted.
std::vector<RegimeRow> regime_map_sweep(const SweepConfig& config,
                                        const std::function<void(const RegimeRow&)>& on_row = {},
                                        const std::set<GridKey>& skip = {});

std::string regime_csv_header();
std::string to_csv(const RegimeRow& row);

}  // namespace chroma
