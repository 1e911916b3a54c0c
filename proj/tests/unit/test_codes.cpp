#include <cmath>
#include <random>

#include "chroma/clique.hpp"
#include "chroma/codes.hpp"
#include "chroma/colorings.hpp"
#include "chroma/error.hpp"
#include "chroma/graphs.hpp"
#include "chroma/assignment.hpp"
#include "chroma/parallel.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chroma;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kOk;
}

std::vector<Color> vec(const Coloring& c) { return {c.colors().begin(), c.colors().end()}; }

// Exact f by brute force: max clique of the compatibility graph, distances
// and clique both from the oracle side.
std::size_t oracle_f(const RegularGraph& g, std::uint32_t q, std::uint64_t threshold) {
    auto all = enumerate_proper(g, q);
    if (all.empty()) return 0;
    // Collapse equivalent colorings only when threshold > 0; they never share a clique then.
    std::vector<std::vector<Color>> reps;
    for (const auto& c : all) {
        bool dup = false;
        if (threshold > 0)
            for (const auto& r : reps)
                if (oracle::distance(r, vec(c), q) == 0) {
                    dup = true;
                    break;
                }
        if (!dup) reps.push_back(vec(c));
    }
    if (reps.size() > 24) return 0;
    std::vector<std::vector<bool>> adj(reps.size(), std::vector<bool>(reps.size(), false));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            adj[i][j] = adj[j][i] = oracle::distance(reps[i], reps[j], q) >= threshold;
    return oracle::max_clique(adj);
}

}  // namespace

TEST_CASE("distance threshold uses an exact ceiling") {
    CHECK(distance_threshold(Rational(2, 3), 9) == 6);
    CHECK(distance_threshold(Rational(7, 10), 9) == 7);
    CHECK(distance_threshold(Rational(1, 5), 5) == 1);
    CHECK(distance_threshold(Rational(0), 5) == 0);
    CHECK(distance_threshold(parse_rational("0.55"), 40) == 22);
    CHECK(distance_threshold(parse_rational("1/3"), 3) == 1);
}

TEST_CASE("verify delta distinct") {
    auto t = tensor_power(3, 2);
    CodeSet c;
    c.members = coordinate_colorings(t);
    c.delta = Rational(2, 3);
    auto ok = verify_delta_distinct(c);
    CHECK(ok.ok);
    CHECK(ok.min_dist == 6u);
    c.delta = parse_rational("0.7");
    CHECK_FALSE(verify_delta_distinct(c).ok);
    CodeSet single;
    single.members = {c.members[0]};
    single.delta = Rational(1);
    CHECK(verify_delta_distinct(single).ok);
    CodeSet empty;
    CHECK(code_of([&] { verify_delta_distinct(empty); }) == ErrorCode::kInvalidArgument);
    CodeSet mixed;
    mixed.members = {c.members[0], Coloring::bind(complete_graph(9), 9, {0, 1, 2, 3, 4, 5, 6, 7, 8})};
    CHECK(code_of([&] { verify_delta_distinct(mixed); }) == ErrorCode::kMixedBinding);
    // Same answer with more workers.
    auto g = gadget_expand(complete_graph(4));
    SamplerConfig s;
    auto packed = greedy_pack(g, s, Rational(1, 4), 20, 400, 3).code;
    auto one = verify_delta_distinct(packed, 1), many = verify_delta_distinct(packed, 4);
    CHECK(one.ok == many.ok);
    CHECK(one.min_dist == many.min_dist);
    CHECK(one.worst_pair == many.worst_pair);
}

TEST_CASE("greedy packing") {
    auto g = gadget_expand(complete_graph(4));
    SamplerConfig s;
    s.q = 3;
    auto r = greedy_pack(g, s, parse_rational("0.55"), 1000, 5000, 1);
    CHECK(r.code.size() >= 2);
    CHECK(verify_delta_distinct(r.code).ok);
    auto again = greedy_pack(g, s, parse_rational("0.55"), 1000, 5000, 1);
    CHECK(again.code.members == r.code.members);

    auto over = greedy_pack(g, s, Rational(2, 3) + Rational(1, 10), 1000, 2000, 2);
    CHECK(over.code.size() <= 1);

    auto first = greedy_pack(g, s, Rational(1, 2), 1, 100, 9);
    REQUIRE(first.code.size() == 1);
    CHECK(first.code.members[0] == sample_gadget_coloring(g, 3, derive_seed(9, 0)));
    CHECK_FALSE(first.budget_exhausted);

    auto bip = random_regular_bipartite(40, 3, 3);
    SamplerConfig b;
    b.kind = SamplerKind::kBipartiteBiased;
    b.tau = 1.0 / 72;
    auto rb = greedy_pack(bip, b, Rational(1, 5), 50, 300, 4);
    CHECK(verify_delta_distinct(rb.code).ok);
    CHECK(rb.code.size() >= 2);
}

TEST_CASE("exact packing examples") {
    auto c5 = exact_max_packing(cycle_graph(5), 3, Rational(1, 5));
    CHECK(c5.size == 5);
    CHECK(c5.proper_colorings == 30);
    CHECK(verify_delta_distinct(c5.witness).ok);
    auto k3 = exact_max_packing(complete_graph(3), 3, Rational(1, 3));
    CHECK(k3.size == 1);
    CHECK(k3.proper_colorings == 6);
    CHECK(exact_max_packing(cycle_graph(5), 3, parse_rational("0.7")).size == 1);
    CHECK(exact_max_packing(complete_graph(4), 3, Rational(1, 4)).size == 0);
    CHECK(code_of([] { exact_max_packing(cycle_graph(12), 3, Rational(1, 2)); }) == ErrorCode::kTooLarge);
}

TEST_CASE("exact packing matches brute force and is monotone") {
    std::vector<RegularGraph> tiny{cycle_graph(5), cycle_graph(6), cycle_graph(7), fixtures::prism3(), complete_graph(3)};
    for (const auto& g : tiny) {
        const std::uint32_t n = g.vertex_count();
        std::size_t prev = SIZE_MAX;
        for (std::uint32_t k = 0; 3 * k <= 2 * n; ++k) {
            const Rational delta(k, n);
            const auto got = exact_max_packing(g, 3, delta);
            if (k == 0) CHECK(got.size == got.proper_colorings);
            if (k > 0) {
                const auto expected = oracle_f(g, 3, k);
                if (expected) CHECK(got.size == expected);
            }
            CHECK(got.size <= prev);
            prev = got.size;
            CHECK(verify_delta_distinct(got.witness).ok);
        }
    }
}

TEST_CASE("exact packing dominates greedy on the enumerated stream") {
    for (const auto& g : {cycle_graph(5), cycle_graph(7), fixtures::prism3()}) {
        for (auto delta : {Rational(1, 5), Rational(2, 5), Rational(1, 2)}) {
            SamplerConfig s;
            s.kind = SamplerKind::kStream;
            s.q = 3;
            s.stream = enumerate_proper(g, 3);
            auto greedy = greedy_pack(g, s, delta, 1000, s.stream.size(), 1);
            CHECK(exact_max_packing(g, 3, delta).size >= greedy.code.size());
        }
    }
}

TEST_CASE("maximum clique against exhaustive search") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 5 + rng() % 16;
        const double p = 0.2 + 0.7 * (rng() % 100) / 100.0;
        BitGraph bg(n);
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if ((rng() % 1000) < p * 1000) {
                    bg.add_edge(i, j);
                    adj[i][j] = adj[j][i] = true;
                }
        auto c = maximum_clique(bg);
        CHECK(c.size() == oracle::max_clique(adj));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) CHECK(adj[c[i]][c[j]]);
    }
}

TEST_CASE("assignment solver") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<std::int64_t> w(n * n);
        for (auto& x : w) x = static_cast<std::int64_t>(rng() % 50) - 10;
        auto col = max_weight_assignment(w, n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::int64_t best = INT64_MIN;
        do {
            best = std::max(best, assignment_value(w, n, perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(assignment_value(w, n, col) == best);
    }
}

TEST_CASE("empirical rate") {
    auto g = gadget_expand(complete_graph(4));
    CodeSet one;
    one.members = {sample_gadget_coloring(g, 3, 1)};
    CHECK(empirical_rate(one) == 0.0);
    CodeSet nine;
    for (std::uint64_t s = 0; s < 9; ++s) nine.members.push_back(sample_gadget_coloring(g, 3, s));
    CHECK(empirical_rate(nine) == doctest::Approx(0.05));
    CodeSet c3;
    auto k = complete_graph(2);
    c3.members = {Coloring::bind(k, 2, {0, 1}), Coloring::bind(k, 2, {1, 0}), Coloring::bind(k, 2, {0, 0}),
                  Coloring::bind(k, 2, {1, 1})};
    CHECK(empirical_rate(c3) == doctest::Approx(1.0));
}

TEST_CASE("empirical f families") {
    FamilyConfig gadget;
    gadget.constructor = FamilyKind::kGadget;
    gadget.delta = Rational(1, 2);
    gadget.lambda_cap = 0.9999;
    gadget.sizes = {4, 6, 8};
    gadget.seeds = {1, 2};
    gadget.budget = 200;
    gadget.target = 8;
    auto rows = empirical_f(gadget);
    CHECK(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.accepted);
        CHECK(r.lambda2 <= 0.9999);
        CHECK(r.n == 20 * r.size_param);
    }

    FamilyConfig lift;
    lift.constructor = FamilyKind::kTensorLift;
    lift.delta = Rational(2, 3);
    // Lifts of a 4-regular graph cannot keep lambda2 near 1/4: the new
    // eigenvalues sit near 2 sqrt(d - 1) / d at best.
    lift.lambda_cap = 0.9;
    lift.sizes = {0, 1, 2};
    lift.budget = 10;
    lift.tensor_power = 2;
    lift.signing_restarts = 8;
    for (const auto& r : empirical_f(lift)) {
        CHECK(r.n == 9u << r.size_param);
        CHECK(r.accepted);
        CHECK(r.code_size >= lift.tensor_power);
        CHECK(r.min_dist == (6u << r.size_param));
    }

    FamilyConfig over = gadget;
    over.delta = Rational(2, 3) + Rational(1, 100);
    for (const auto& r : empirical_f(over)) CHECK(r.code_size <= 1);

    gadget.threads = 3;
    auto threaded = empirical_f(gadget);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(threaded[i].code_size == rows[i].code_size);
        CHECK(threaded[i].lambda2 == rows[i].lambda2);
    }
    CHECK(parse_family("tensor-lift") == FamilyKind::kTensorLift);
    CHECK(code_of([] { parse_family("nope"); }) == ErrorCode::kParse);
}
