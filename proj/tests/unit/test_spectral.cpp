#include <cmath>
#include <numeric>
#include <random>

#include "chroma/error.hpp"
#include "chroma/graphs.hpp"
#include "chroma/spectral.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chroma;

namespace {

void check_spectrum(const Spectrum& s, const std::vector<double>& expected) {
    REQUIRE(s.eigenvalues.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

}  // namespace

TEST_CASE("closed-form spectra") {
    check_spectrum(full_spectrum(complete_graph(4)), {1.0, -1.0 / 3, -1.0 / 3, -1.0 / 3});
    for (std::uint32_t n : {5u, 6u, 7u, 12u, 31u}) check_spectrum(full_spectrum(cycle_graph(n)), oracle::cycle_spectrum(n));
    for (std::uint32_t q : {3u, 4u})
        for (std::uint32_t N : {1u, 2u, 3u}) check_spectrum(full_spectrum(tensor_power(q, N)), oracle::tensor_spectrum(q, N));
    check_spectrum(full_spectrum(tensor_power(3, 2)), {1, .25, .25, .25, .25, -.5, -.5, -.5, -.5});
}

TEST_CASE("lambda2 and lambda_min") {
    CHECK(lambda2(tensor_power(3, 2)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lambda2(complete_graph(4)) == doctest::Approx(-1.0 / 3));
    auto two = two_lift(complete_graph(3), uniform_signing(complete_graph(3), 1));
    CHECK(lambda2(two) == 1.0);
    CHECK(lambda_min(complete_graph(4)) == doctest::Approx(-1.0 / 3));
    CHECK(lambda_min(random_regular_bipartite(20, 3, 4)) == doctest::Approx(-1.0));
    CHECK(lambda_min(cycle_graph(5)) == doctest::Approx(std::cos(4 * oracle::kPi / 5)));
}

TEST_CASE("spectrum invariants") {
    auto suite = fixtures::small_suite();
    for (auto& m : fixtures::medium_suite()) suite.push_back(std::move(m));
    for (const auto& f : suite) {
        const auto s = full_spectrum(f.graph);
        CHECK_MESSAGE(s.residual < 1e-8, f.name);
        CHECK(s.eigenvalues.front() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
        for (double e : s.eigenvalues) {
            CHECK(e <= 1.0 + 1e-9);
            CHECK(e >= -1.0 - 1e-9);
        }
        const double trace = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
        CHECK(std::abs(trace) < 1e-8 * f.graph.vertex_count());
    }
}

TEST_CASE("iterative path agrees with dense") {
    auto suite = fixtures::small_suite();
    for (auto& m : fixtures::medium_suite()) suite.push_back(std::move(m));
    for (const auto& f : suite) {
        const auto s = full_spectrum(f.graph);
        CHECK_MESSAGE(std::abs(lambda2_iterative(f.graph, 1e-10, 5'000'000) - s.eigenvalues[1]) < 1e-6, f.name);
        CHECK_MESSAGE(std::abs(lambda_min_iterative(f.graph, 1e-10, 5'000'000) - s.eigenvalues.back()) < 1e-6, f.name);
    }
    // Above a lowered dense cap, lambda2 switches to iteration.
    SpectralOptions opts;
    opts.dense_cap = 10;
    auto g = random_regular_bipartite(40, 4, 2);
    CHECK(std::abs(lambda2(g, opts) - lambda2(g)) < 1e-6);
}

TEST_CASE("rayleigh quotient") {
    auto k4 = complete_graph(4);
    std::vector<double> ones(4, 1.0);
    CHECK(rayleigh_quotient(k4, ones) == doctest::Approx(1.0));
    std::vector<double> x{3, -1, -1, -1};
    CHECK(rayleigh_quotient(k4, x) == doctest::Approx(-1.0 / 3));
    auto bip = random_regular_bipartite(10, 3, 1);
    std::vector<double> sign(20);
    for (Vertex v = 0; v < 20; ++v) sign[v] = (*bip.part_labels())[v] ? -1.0 : 1.0;
    CHECK(rayleigh_quotient(bip, sign) == doctest::Approx(-1.0));
    std::vector<double> zero(4, 0.0);
    CHECK_THROWS_AS(rayleigh_quotient(k4, zero), Error);
}

TEST_CASE("rayleigh quotient below lambda2 on the orthogonal complement") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    auto suite = fixtures::small_suite();
    for (auto& m : fixtures::medium_suite()) suite.push_back(std::move(m));
    for (const auto& f : suite) {
        const double l2 = lambda2(f.graph);
        const std::uint32_t n = f.graph.vertex_count();
        for (int t = 0; t < 1000; ++t) {
            std::vector<double> x(n);
            for (auto& v : x) v = gauss(rng);
            const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
            for (auto& v : x) v -= mean;
            CHECK(rayleigh_quotient(f.graph, x) <= l2 + 1e-8);
        }
    }
}

TEST_CASE("cheeger sandwich") {
    auto k4 = cheeger_check(complete_graph(4));
    CHECK(k4.lower == doctest::Approx(2.0));
    CHECK(k4.h == doctest::Approx(2.0));
    CHECK(k4.upper == doctest::Approx(3 * std::sqrt(8.0 / 3)));
    CHECK(k4.ok);
    auto c6 = cheeger_check(cycle_graph(6));
    CHECK(c6.lambda2 == doctest::Approx(0.5));
    CHECK(c6.lower == doctest::Approx(0.5));
    CHECK(c6.h == doctest::Approx(2.0 / 3));
    CHECK(c6.upper == doctest::Approx(2.0));
    CHECK(c6.ok);
    auto two = cheeger_check(two_lift(complete_graph(3), uniform_signing(complete_graph(3), 1)));
    CHECK(two.h == 0.0);
    CHECK(two.lambda2 == 1.0);
    CHECK(two.lower == 0.0);
    CHECK(two.ok);
    for (const auto& f : fixtures::small_suite()) CHECK_MESSAGE(cheeger_check(f.graph).ok, f.name);
}

TEST_CASE("lift spectrum contains the base spectrum") {
    std::mt19937_64 rng(8);
    for (const auto& f : fixtures::small_suite()) {
        const auto base = full_spectrum(f.graph).eigenvalues;
        Signing s;
        for (std::size_t i = 0; i < f.graph.edge_count(); ++i) s.signs.push_back(rng() & 1 ? 1 : -1);
        auto lift = full_spectrum(two_lift(f.graph, s)).eigenvalues;
        // Remove each base eigenvalue from the lift's multiset.
        for (double e : base) {
            auto it = std::min_element(lift.begin(), lift.end(), [e](double a, double b) { return std::abs(a - e) < std::abs(b - e); });
            CHECK_MESSAGE(std::abs(*it - e) < 1e-8, f.name);
            lift.erase(it);
        }
        // What remains is the signed spectrum.
        CHECK(lift.front() == doctest::Approx(signed_lambda_max(f.graph, s)).epsilon(1e-9));
    }
}

TEST_CASE("degenerate inputs") {
    auto empty = RegularGraph::from_edges(3, std::vector<Edge>{});
    CHECK_THROWS_AS(full_spectrum(empty), Error);
    CHECK(lambda2(empty) == 1.0);
    CHECK_THROWS_AS(full_spectrum(cycle_graph(40), 20), Error);
}
