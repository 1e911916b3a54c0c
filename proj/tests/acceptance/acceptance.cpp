// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "chroma/codes.hpp"
#include "chroma/colorings.hpp"
#include "chroma/graphs.hpp"
#include "chroma/parallel.hpp"
#include "chroma/regimes.hpp"
#include "chroma/spectral.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chroma;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records a failed sub-check without stopping the criterion.
struct Tally {
    bool ok = true;
    std::size_t checks = 0;
    std::string first_failure;
    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) first_failure = what;
        ok = ok && cond;
    }
};

Coloring random_proper(const RegularGraph& g, std::uint32_t q, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Color> c(g.vertex_count());
        bool stuck = false;
        for (Vertex v = 0; v < g.vertex_count() && !stuck; ++v) {
            std::vector<Color> ok;
            for (Color k = 0; k < q; ++k) {
                bool free = true;
                for (Vertex u : g.neighbors(v))
                    if (u < v && c[u] == k) free = false;
                if (free) ok.push_back(k);
            }
            if (ok.empty()) stuck = true;
            else c[v] = ok[rng() % ok.size()];
        }
        if (!stuck) return Coloring::bind(g, q, c);
    }
}

Outcome spectral_exactness() {
    Tally t;
    char buf[160];
    const double a = lambda2(tensor_power(3, 2)), b = lambda2(tensor_power(3, 3));
    t.expect(std::abs(a - 0.25) <= 1e-9, "lambda2(K3^2)");
    t.expect(std::abs(b - 0.25) <= 1e-9, "lambda2(K3^3)");
    double worst = 0.0;
    for (std::uint32_t q = 3; q <= 6; ++q) {
        const double err = std::abs(lambda2(complete_graph(q)) + 1.0 / (q - 1));
        worst = std::max(worst, err);
        t.expect(err <= 1e-9, "lambda2(K_" + std::to_string(q) + ")");
    }
    std::snprintf(buf, sizeof buf, "K3^2=%.12f K3^3=%.12f max|K_q err|=%.1e", a, b, worst);
    return {t.ok, t.ok ? buf : t.first_failure + "; " + buf};
}

Outcome distance_formulas() {
    Tally t;
    for (std::uint32_t q : {3u, 4u})
        for (std::uint32_t N : {2u, 3u}) {
            auto g = tensor_power(q, N);
            auto xs = coordinate_colorings(g);
            const std::uint64_t want = static_cast<std::uint64_t>(g.vertex_count()) * (q - 1) / q;
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = i + 1; j < xs.size(); ++j)
                    t.expect(distance(xs[i], xs[j]).distance == want, "coordinate q=" + std::to_string(q));
        }
    for (std::uint32_t q : {3u, 4u, 5u}) {
        auto g = random_regular_bipartite((q - 1) * 5, 3, q);
        auto [x, y] = layered_bipartite_pair(g, q);
        const std::uint64_t want = static_cast<std::uint64_t>(g.vertex_count()) * (q - 2) / (q - 1);
        t.expect(distance(x, y).distance == want, "layered q=" + std::to_string(q));
    }
    return {t.ok, t.ok ? std::to_string(t.checks) + " exact distance identities" : t.first_failure};
}

Outcome oracle_equivalence() {
    std::size_t mismatches = 0, pairs = 0;
    for (std::uint32_t q = 3; q <= 6; ++q) {
        auto g = random_regular_bipartite(30, 3, 100 + q);
        std::mt19937_64 rng(derive_seed(3, q));
        for (int i = 0; i < 1000; ++i) {
            auto x = random_proper(g, q, rng), y = random_proper(g, q, rng);
            const auto a = distance(x, y, DistanceMethod::kAssignment);
            const auto b = distance(x, y, DistanceMethod::kBruteForce);
            mismatches += a.distance != b.distance;
            ++pairs;
        }
    }
    return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome gadget_construction() {
    Tally t;
    auto g = gadget_expand(complete_graph(4));
    t.expect(g.vertex_count() == 40, "vertex count");
    t.expect(g.degree() == 3, "degree");
    const double l2 = lambda2(g);
    t.expect(l2 <= 1.0 - 1e-4, "lambda2 <= 1 - 1e-4");
    std::size_t violations = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) violations += !is_proper(g, sample_gadget_coloring(g, 3, s)).proper;
    t.expect(violations == 0, "sampler properness");
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%u d=%u lambda2=%.6f, %zu/10000 improper samples", g.vertex_count(), g.degree(), l2,
                  violations);
    return {t.ok, buf};
}

Outcome lift_invariants() {
    Tally t;
    auto base = tensor_power(3, 2);
    const auto base_eigs = full_spectrum(base).eigenvalues;
    auto xs = coordinate_colorings(base);
    std::mt19937_64 rng(55);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        Signing s;
        for (std::size_t i = 0; i < base.edge_count(); ++i) s.signs.push_back(rng() & 1 ? 1 : -1);
        auto lift = two_lift(base, s);
        t.expect(lift.vertex_count() == 18 && lift.degree() == 4, "lift shape");
        auto eigs = full_spectrum(lift).eigenvalues;
        for (double e : base_eigs) {
            auto it = std::min_element(eigs.begin(), eigs.end(),
                                       [e](double a, double b) { return std::abs(a - e) < std::abs(b - e); });
            worst = std::max(worst, std::abs(*it - e));
            eigs.erase(it);
        }
        t.expect(worst <= 1e-8, "spectrum containment");
        t.expect(distance(lift_coloring(xs[0], lift), lift_coloring(xs[1], lift)).distance == 12, "lifted distance");
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "20 signings, max containment error %.1e", worst);
    return {t.ok, t.ok ? buf : t.first_failure + "; " + buf};
}

Outcome exact_f_oracle() {
    Tally t;
    auto c5 = exact_max_packing(cycle_graph(5), 3, Rational(1, 5));
    auto k3 = exact_max_packing(complete_graph(3), 3, Rational(1, 3));
    t.expect(c5.size == 5, "f(C5)");
    t.expect(k3.size == 1, "f(K3)");
    t.expect(c5.proper_colorings == 30 && oracle::cycle_chromatic(5, 3) == 30, "C5 colorings");
    t.expect(k3.proper_colorings == 6 && oracle::cycle_chromatic(3, 3) == 6, "K3 colorings");
    return {t.ok, "f(C5,1/5)=" + std::to_string(c5.size) + " from " + std::to_string(c5.proper_colorings) +
                      " colorings; f(K3,1/3)=" + std::to_string(k3.size) + " from " + std::to_string(k3.proper_colorings)};
}

Outcome certificate_boundary() {
    Tally t;
    t.expect(unique_regime_certificate(3, Rational(2, 3), Rational(1, 4) - Rational(1, 100)).certified, "certified below 1/4");
    t.expect(!unique_regime_certificate(3, Rational(2, 3), Rational(1, 4)).certified, "not certified at 1/4");
    t.expect(!unique_regime_certificate(3, Rational(1, 2), Rational(1, 100)).certified, "not certified at delta=1/2");

    SweepConfig cfg;
    cfg.q = 3;
    cfg.deltas = {Rational(1, 2)};
    cfg.lambdas = {Rational(2, 5)};
    cfg.families = {SweepFamily{"layered-bipartite", {500}, 25, std::nullopt, 2, 20}};
    cfg.seeds = {1};
    cfg.budget = 2;
    const auto rows = regime_map_sweep(cfg);
    t.expect(rows.size() == 1, "one sweep row");
    char buf[200] = "no row";
    if (!rows.empty()) {
        const auto& r = rows[0];
        t.expect(r.classification == RegimeClass::kCounterexampleExists, "sweep finds the pair");
        t.expect(r.evidence_kind == "layered-bipartite", "evidence kind");
        t.expect(r.n == 2000u, "n=2000");
        t.expect(r.lambda2_measured && *r.lambda2_measured <= 0.4, "measured lambda2 <= 0.4");
        t.expect(r.min_dist == 1000u, "distance (1/2)|V|");
        std::snprintf(buf, sizeof buf, "certificate boundary exact; sweep at (1/2, 2/5): %s, n=%u, lambda2=%.5f, d(X,Y)=%llu",
                      regime_class_name(r.classification).c_str(), r.n.value_or(0), r.lambda2_measured.value_or(1.0),
                      static_cast<unsigned long long>(r.min_dist.value_or(0)));
    }
    return {t.ok, t.ok ? buf : t.first_failure + "; " + buf};
}

Outcome sampler_concentration() {
    const std::uint32_t d = 4;
    const double tau = 1.0 / (8.0 * d * d);
    auto g = random_regular_bipartite(2000, d, 1);
    const double n = g.vertex_count();
    std::size_t over = 0;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto x = sample_bipartite_biased(g, 3, tau, derive_seed(8, 2 * i));
        auto y = sample_bipartite_biased(g, 3, tau, derive_seed(8, 2 * i + 1));
        const auto dist = distance(x, y).distance;
        over += static_cast<double>(dist) >= n / 4;
        sum += static_cast<double>(dist);
    }
    const double frac = over / 200.0, mean = sum / 200.0, mean_bar = (0.25 + 1.0 / (64.0 * d * d)) * n;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%.1f%% of pairs >= |V|/4 (need >= 95%%); mean %.2f vs %.2f", 100 * frac, mean, mean_bar);
    return {frac >= 0.95 && mean > mean_bar, buf};
}

Outcome structural_suite() {
    Tally t;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    auto suite = fixtures::small_suite();
    for (auto& m : fixtures::medium_suite()) suite.push_back(std::move(m));
    std::size_t graphs = 0;
    for (const auto& f : suite) {
        const auto& g = f.graph;
        ++graphs;
        const double l2 = lambda2(g);
        const std::uint32_t n = g.vertex_count();
        for (int i = 0; i < 200; ++i) {
            std::vector<Vertex> a;
            for (Vertex v = 0; v < n; ++v)
                if (rng() & 1) a.push_back(v);
            const auto m = subset_measures(g, a);
            t.expect(2 * m.edges_within + m.edges_cross == a.size() * g.degree(), "degree conservation " + f.name);
            t.expect(independent_size_bound(g, a).ok, "independent size bound " + f.name);
            std::vector<double> x(n);
            for (auto& v : x) v = gauss(rng);
            const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
            for (auto& v : x) v -= mean;
            t.expect(rayleigh_quotient(g, x) <= l2 + 1e-8, "Rayleigh " + f.name);
        }
        if (n <= 24) t.expect(cheeger_check(g).ok, "Cheeger " + f.name);
        for (std::uint32_t q : {3u, 4u}) {
            if (f.name == "K4" && q == 3) continue;
            if (f.name == "K5" || (f.name == "tensor4x2" && q == 3)) continue;
            for (int i = 0; i < 10; ++i) {
                const auto p = sigma_profile(g, random_proper(g, q, rng), random_proper(g, q, rng), l2);
                for (const auto& e : p.entries) t.expect(e.inequality_holds, "sigma inequality " + f.name);
                t.expect(p.distance_matches, "sigma distance " + f.name);
            }
        }
    }
    const bool enough = graphs >= 10 && t.checks >= 10000;
    return {t.ok && enough, std::to_string(graphs) + " graphs, " + std::to_string(t.checks) + " assertions" +
                                (t.ok ? "" : "; first failure: " + t.first_failure)};
}

Outcome monotonicity() {
    std::size_t violations = 0, points = 0;
    for (const auto& g : {cycle_graph(5), cycle_graph(7), fixtures::prism3()}) {
        const std::uint32_t n = g.vertex_count();
        std::size_t prev = SIZE_MAX;
        for (std::uint32_t k = 0; 3 * k <= 2 * n; ++k) {
            const auto f = exact_max_packing(g, 3, Rational(k, n)).size;
            violations += f > prev;
            prev = f;
            ++points;
        }
    }
    return {violations == 0, std::to_string(points) + " grid points, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double budget_s;
    };
    const std::vector<Criterion> criteria{
        {1, "spectral exactness", spectral_exactness, 5},
        {2, "distance formulas", distance_formulas, 5},
        {3, "oracle equivalence", oracle_equivalence, 0},
        {4, "gadget construction", gadget_construction, 0},
        {5, "lift invariants", lift_invariants, 0},
        {6, "exact f oracle", exact_f_oracle, 10},
        {7, "certificate boundary", certificate_boundary, 0},
        {8, "sampler distance concentration", sampler_concentration, 120},
        {9, "structural inequality suite", structural_suite, 0},
        {10, "monotonicity in delta", monotonicity, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs >= c.budget_s) {
            o.pass = false;
            o.detail += "; over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
        }
        std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
