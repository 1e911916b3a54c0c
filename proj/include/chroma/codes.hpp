#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chroma/colorings.hpp"
#include "chroma/graphs.hpp"
#include "chroma/rational.hpp"

namespace chroma {

// A set of colorings of one graph with a promised distance fraction.
struct CodeSet {
    std::vector<Coloring> members;
    Rational delta = 0;
    std::optional<std::uint64_t> min_dist;  // empty for fewer than two members
    bool verified = false;
    std::string provenance;

    std::size_t size() const noexcept { return members.size(); }
};

struct DeltaCheck {
    bool ok = true;
    std::optional<std::uint64_t> min_dist;
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
};

// Pairs are compatible iff distance >= ceil(delta * n).
std::uint64_t distance_threshold(const Rational& delta, std::uint64_t n);

DeltaCheck verify_delta_distinct(const CodeSet& code, unsigned threads = 1);

enum class SamplerKind { kGadget, kBipartiteBiased, kStream };

struct SamplerConfig {
    SamplerKind kind = SamplerKind::kGadget;
    std::uint32_t q = 3;
    double tau = 0.0;               // biased sampler only
    std::vector<Coloring> stream;   // kStream: drawn in order, improper entries skipped
};

std::string sampler_name(SamplerKind kind);

struct PackResult {
    CodeSet code;
    bool budget_exhausted = false;
    std::size_t samples_drawn = 0;
};

// Sample i uses seed derive_seed(seed, i); a sample is kept iff it is at
// distance >= ceil(delta * n) from everything kept so far.
PackResult greedy_pack(const RegularGraph& g, const SamplerConfig& sampler, const Rational& delta,
                       std::size_t target, std::size_t budget, std::uint64_t seed);

struct ExactPacking {
    std::size_t size = 0;
    std::size_t proper_colorings = 0;
    CodeSet witness;
};

ExactPacking exact_max_packing(const RegularGraph& g, std::uint32_t q, const Rational& delta,
                               std::uint32_t vertex_cap = 16, std::size_t clique_cap = 2000);

// log_q |C| / n.
double empirical_rate(const CodeSet& code);

enum class FamilyKind { kGadget, kRandomBipartite, kTensorLift };

struct FamilyConfig {
    FamilyKind constructor = FamilyKind::kGadget;
    std::uint32_t q = 3;
    Rational delta = 0;
    double lambda_cap = 1.0;
    // gadget: half-size of the random cubic bipartite base graph;
    // random-bipartite: part size; tensor-lift: number of 2-lifts.
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint64_t> seeds{1};
    std::size_t budget = 1000;
    std::size_t target = 64;
    std::uint32_t degree = 3;           // random-bipartite
    std::optional<double> tau;          // random-bipartite; default 1/(8 d^2)
    std::uint32_t tensor_power = 2;     // tensor-lift
    std::uint32_t signing_restarts = 20;
    unsigned threads = 1;
};

struct FRow {
    std::uint32_t size_param = 0;
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    double lambda2 = 1.0;
    bool accepted = false;  // lambda2 <= lambda_cap
    std::size_t code_size = 0;
    std::optional<std::uint64_t> min_dist;
};

std::vector<FRow> empirical_f(const FamilyConfig& config);

std::string family_name(FamilyKind kind);
FamilyKind parse_family(const std::string& name);

}  // namespace chroma
