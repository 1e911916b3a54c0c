#include "chroma/codes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chroma/clique.hpp"
#include "chroma/error.hpp"
#include "chroma/parallel.hpp"
#include "chroma/spectral.hpp"

namespace chroma {

std::uint64_t distance_threshold(const Rational& delta, std::uint64_t n) {
    if (delta < 0) fail(ErrorCode::kInvalidArgument, "delta must be non-negative");
    return ceil_times(delta, n);
}

DeltaCheck verify_delta_distinct(const CodeSet& code, unsigned threads) {
    if (code.members.empty()) fail(ErrorCode::kInvalidArgument, "code set has no members");
    const Coloring& first = code.members.front();
    for (const auto& m : code.members) {
        if (m.graph_id() != first.graph_id() || m.q() != first.q() || m.size() != first.size()) {
            fail(ErrorCode::kMixedBinding, "code members are bound to different graphs or palettes");
        }
    }
    const std::size_t k = code.members.size();
    DeltaCheck check;
    if (k < 2) return check;

    struct RowMin {
        std::uint64_t dist = std::numeric_limits<std::uint64_t>::max();
        std::size_t partner = 0;
    };
    std::vector<RowMin> rows(k - 1);
    parallel_for(k - 1, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto d = distance(code.members[i], code.members[j]).distance;
            if (d < rows[i].dist) rows[i] = {d, j};
        }
    });
    std::size_t worst = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].dist < rows[worst].dist) worst = i;
    check.min_dist = rows[worst].dist;
    check.worst_pair = std::make_pair(worst, rows[worst].partner);
    check.ok = *check.min_dist >= distance_threshold(code.delta, first.size());
    return check;
}

std::string sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::kGadget: return "gadget";
        case SamplerKind::kBipartiteBiased: return "biased-bipartite";
        case SamplerKind::kStream: return "stream";
    }
    return "unknown";
}

PackResult greedy_pack(const RegularGraph& g, const SamplerConfig& sampler, const Rational& delta,
                       std::size_t target, std::size_t budget, std::uint64_t seed) {
    if (target == 0) fail(ErrorCode::kInvalidArgument, "target must be at least 1");
    const std::uint64_t threshold = distance_threshold(delta, g.vertex_count());
    PackResult result;
    result.code.delta = delta;
    result.code.provenance = "{\"method\":\"greedy_pack\",\"sampler\":\"" + sampler_name(sampler.kind) +
                             "\",\"seed\":" + std::to_string(seed) + ",\"budget\":" + std::to_string(budget) +
                             ",\"target\":" + std::to_string(target) + "}";

    std::optional<std::uint64_t> min_dist;
    for (std::size_t i = 0; i < budget && result.code.size() < target; ++i) {
        Coloring sample;
        switch (sampler.kind) {
            case SamplerKind::kGadget:
                sample = sample_gadget_coloring(g, sampler.q, derive_seed(seed, i));
                break;
            case SamplerKind::kBipartiteBiased:
                sample = sample_bipartite_biased(g, sampler.q, sampler.tau, derive_seed(seed, i));
                break;
            case SamplerKind::kStream:
                if (i >= sampler.stream.size()) {
                    i = budget;
                    continue;
                }
                sample = sampler.stream[i];
                break;
        }
        ++result.samples_drawn;
        if (!is_proper(g, sample).proper) continue;
        std::uint64_t closest = std::numeric_limits<std::uint64_t>::max();
        bool keep = true;
        for (const auto& kept : result.code.members) {
            const auto d = distance(sample, kept).distance;
            if (d < threshold) {
                keep = false;
                break;
            }
            closest = std::min(closest, d);
        }
        if (!keep) continue;
        if (!result.code.members.empty()) min_dist = std::min(min_dist.value_or(closest), closest);
        result.code.members.push_back(std::move(sample));
    }
    result.code.min_dist = min_dist;
    result.code.verified = true;
    result.budget_exhausted = result.code.size() < target;
    return result;
}

ExactPacking exact_max_packing(const RegularGraph& g, std::uint32_t q, const Rational& delta,
                               std::uint32_t vertex_cap, std::size_t clique_cap) {
    const std::uint64_t threshold = distance_threshold(delta, g.vertex_count());
    std::vector<Coloring> all = enumerate_proper(g, q, vertex_cap, clique_cap + 1);
    if (all.size() > clique_cap) {
        fail(ErrorCode::kTooLarge, "more than " + std::to_string(clique_cap) + " proper colorings");
    }
    ExactPacking out;
    out.proper_colorings = all.size();
    out.witness.delta = delta;
    out.witness.provenance = "{\"method\":\"exact_max_packing\"}";
    if (all.empty()) {
        out.witness.verified = true;
        return out;
    }
    BitGraph compat(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (distance(all[i], all[j]).distance >= threshold) compat.add_edge(i, j);
    const auto clique = maximum_clique(compat);
    for (std::size_t idx : clique) out.witness.members.push_back(all[idx]);
    out.size = clique.size();
    if (out.size >= 2) out.witness.min_dist = verify_delta_distinct(out.witness).min_dist;
    out.witness.verified = true;
    return out;
}

double empirical_rate(const CodeSet& code) {
    if (code.members.empty()) fail(ErrorCode::kInvalidArgument, "rate of an empty code");
    const auto& m = code.members.front();
    if (m.size() == 0 || m.q() < 2) fail(ErrorCode::kInvalidArgument, "rate needs n >= 1 and q >= 2");
    return std::log(static_cast<double>(code.members.size())) /
           (static_cast<double>(m.size()) * std::log(static_cast<double>(m.q())));
}

std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::kGadget: return "gadget";
        case FamilyKind::kRandomBipartite: return "random-bipartite";
        case FamilyKind::kTensorLift: return "tensor-lift";
    }
    return "unknown";
}

FamilyKind parse_family(const std::string& name) {
    if (name == "gadget") return FamilyKind::kGadget;
    if (name == "random-bipartite") return FamilyKind::kRandomBipartite;
    if (name == "tensor-lift") return FamilyKind::kTensorLift;
    fail(ErrorCode::kParse, "unknown family '" + name + "'");
}

namespace {

FRow run_family_point(const FamilyConfig& config, std::uint32_t size, std::uint64_t seed) {
    FRow row;
    row.size_param = size;
    row.seed = seed;
    SamplerConfig sampler;
    sampler.q = config.q;
    std::optional<RegularGraph> graph;
    switch (config.constructor) {
        case FamilyKind::kGadget: {
            graph = gadget_expand(random_regular_bipartite(size, 3, seed));
            sampler.kind = SamplerKind::kGadget;
            break;
        }
        case FamilyKind::kRandomBipartite: {
            graph = random_regular_bipartite(size, config.degree, seed);
            sampler.kind = SamplerKind::kBipartiteBiased;
            const double d = config.degree;
            sampler.tau = config.tau.value_or(1.0 / (8.0 * d * d));
            break;
        }
        case FamilyKind::kTensorLift: {
            graph = tensor_power(config.q, config.tensor_power);
            std::vector<Coloring> colorings = coordinate_colorings(*graph);
            for (std::uint32_t k = 0; k < size; ++k) {
                const auto found = search_low_lambda_signing(*graph, config.signing_restarts, derive_seed(seed, k));
                RegularGraph lifted = two_lift(*graph, found.signing);
                for (auto& c : colorings) c = lift_coloring(c, lifted);
                graph = std::move(lifted);
            }
            sampler.kind = SamplerKind::kStream;
            sampler.stream = std::move(colorings);
            break;
        }
    }
    row.n = graph->vertex_count();
    row.lambda2 = lambda2(*graph);
    row.accepted = row.lambda2 <= config.lambda_cap;
    if (!row.accepted) return row;
    const PackResult packed = greedy_pack(*graph, sampler, config.delta, config.target, config.budget, seed);
    row.code_size = packed.code.size();
    row.min_dist = packed.code.min_dist;
    return row;
}

}  // namespace

std::vector<FRow> empirical_f(const FamilyConfig& config) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> points;
    for (auto size : config.sizes)
        for (auto seed : config.seeds) points.emplace_back(size, seed);
    std::vector<FRow> rows(points.size());
    parallel_for(points.size(), config.threads,
                 [&](std::size_t i) { rows[i] = run_family_point(config, points[i].first, points[i].second); });
    return rows;
}

}  // namespace chroma
