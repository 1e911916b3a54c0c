#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "chroma/error.hpp"
#include "chroma/graphs.hpp"
#include "chroma/parallel.hpp"
#include "chroma/spectral.hpp"

namespace chroma {
namespace {

constexpr double kImprovement = 1e-12;
constexpr int kMaxPasses = 50;

struct Candidate {
    Signing signing;
    double value = 0.0;  // largest signed eigenvalue
};

Candidate descend(const RegularGraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    Candidate c;
    c.signing.signs.resize(g.edge_count());
    for (auto& s : c.signing.signs) s = coin(rng) ? 1 : -1;
    c.value = signed_lambda_max(g, c.signing);
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool improved = false;
        for (std::size_t id = 0; id < g.edge_count(); ++id) {
            c.signing.signs[id] = static_cast<std::int8_t>(-c.signing.signs[id]);
            const double value = signed_lambda_max(g, c.signing);
            if (value < c.value - kImprovement) {
                c.value = value;
                improved = true;
            } else {
                c.signing.signs[id] = static_cast<std::int8_t>(-c.signing.signs[id]);
            }
        }
        if (!improved) break;
    }
    return c;
}

}  // namespace

SigningSearchResult search_low_lambda_signing(const RegularGraph& g, std::uint32_t restarts,
                                              std::uint64_t seed, unsigned threads) {
    if (restarts == 0) fail(ErrorCode::kInvalidArgument, "signing search needs at least one restart");
    if (g.degree() == 0) fail(ErrorCode::kZeroDegree, "signing search on a 0-regular graph");
    const double base_lambda2 = lambda2(g);

    std::vector<Candidate> found(restarts);
    parallel_for(restarts, threads, [&](std::size_t r) { found[r] = descend(g, derive_seed(seed, r)); });

    // Min-reduction in restart order; near-ties go to the lexicographically
    // smaller signing so the answer does not depend on the worker count.
    std::size_t best = 0;
    for (std::size_t r = 1; r < found.size(); ++r) {
        const double diff = found[r].value - found[best].value;
        if (diff < -kImprovement || (diff <= kImprovement && found[r].signing < found[best].signing)) {
            best = r;
        }
    }
    SigningSearchResult result;
    result.signing = std::move(found[best].signing);
    result.lambda2 = std::max(base_lambda2, found[best].value);
    return result;
}

}  // namespace chroma
