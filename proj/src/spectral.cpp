#include "chroma/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "chroma/error.hpp"

namespace chroma {
namespace {

Eigen::MatrixXd normalized_adjacency(const RegularGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const double inv = 1.0 / g.degree();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(e.u, e.v) = inv;
        a(e.v, e.u) = inv;
    }
    return a;
}

void check_dense(const RegularGraph& g, std::uint32_t dense_cap) {
    if (g.degree() == 0) {
        fail(ErrorCode::kZeroDegree, "0-regular graph: lambda2 = 1 by convention, no spectrum computed");
    }
    if (g.vertex_count() > dense_cap) {
        fail(ErrorCode::kTooLarge, "dense spectrum is capped at " + std::to_string(dense_cap) + " vertices");
    }
}

std::vector<double> dense_eigenvalues(const RegularGraph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_adjacency(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNoConvergence, "dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void apply_normalized(const RegularGraph& g, const std::vector<double>& x, std::vector<double>& y) {
    const double inv = 1.0 / g.degree();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double s = 0.0;
        for (Vertex w : g.neighbors(v)) s += x[w];
        y[v] = s * inv;
    }
}

void remove_mean(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

double normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& v : x) v /= s;
    return s;
}

// Power iteration for the top eigenvalue of (I + sign*A)/2 on 1-perp.
// Stops when successive Rayleigh quotients differ by < tol and the
// geometric tail estimate of the remaining change is also < tol.
double shifted_power(const RegularGraph& g, double sign, double tol, std::size_t max_iterations,
                     std::uint64_t seed) {
    const std::uint32_t n = g.vertex_count();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<double> x(n), ax(n);
    for (double& v : x) v = gauss(rng);
    remove_mean(x);
    if (normalize(x) == 0.0) fail(ErrorCode::kNoConvergence, "degenerate start vector");
    double previous = -1.0;
    double previous_step = 0.0;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        apply_normalized(g, x, ax);
        double rq = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            ax[i] = 0.5 * (x[i] + sign * ax[i]);
            rq += x[i] * ax[i];
        }
        const double step = std::abs(rq - previous);
        // A step at rounding level means the quotient is already exact.
        if (it > 2 && step <= 64.0 * std::numeric_limits<double>::epsilon()) return rq;
        if (it > 2 && step < tol) {
            const double ratio = previous_step > 0.0 ? std::min(step / previous_step, 0.999999) : 0.0;
            if (step * ratio / (1.0 - ratio) < tol) return rq;
        }
        previous_step = step;
        previous = rq;
        x.swap(ax);
        remove_mean(x);
        if (normalize(x) == 0.0) return 0.0;  // operator annihilates 1-perp
    }
    fail(ErrorCode::kNoConvergence,
         "power iteration did not converge within " + std::to_string(max_iterations) + " iterations");
}

}  // namespace

Spectrum full_spectrum(const RegularGraph& g, std::uint32_t dense_cap) {
    check_dense(g, dense_cap);
    const Eigen::MatrixXd a = normalized_adjacency(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNoConvergence, "dense eigensolver failed");
    const Eigen::MatrixXd residual =
        a * solver.eigenvectors() - solver.eigenvectors() * solver.eigenvalues().asDiagonal();
    Spectrum s;
    s.method = SpectrumMethod::kDense;
    s.residual = residual.size() == 0 ? 0.0 : residual.cwiseAbs().maxCoeff();
    const auto& ev = solver.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

double lambda2(const RegularGraph& g, const SpectralOptions& options) {
    if (g.degree() == 0 || !g.is_connected()) return 1.0;
    if (g.vertex_count() <= options.dense_cap) return dense_eigenvalues(g)[1];
    return lambda2_iterative(g, options.tol, options.max_iterations, options.seed);
}

double lambda_min(const RegularGraph& g, const SpectralOptions& options) {
    if (g.degree() == 0) fail(ErrorCode::kZeroDegree, "lambda_min is undefined for a 0-regular graph");
    if (g.vertex_count() <= options.dense_cap) return dense_eigenvalues(g).back();
    return lambda_min_iterative(g, options.tol, options.max_iterations, options.seed);
}

double lambda2_iterative(const RegularGraph& g, double tol, std::size_t max_iterations,
                         std::uint64_t seed) {
    if (tol <= 0.0) fail(ErrorCode::kInvalidArgument, "tolerance must be positive");
    if (g.degree() == 0 || !g.is_connected()) return 1.0;
    return 2.0 * shifted_power(g, 1.0, tol / 2.0, max_iterations, seed) - 1.0;
}

double lambda_min_iterative(const RegularGraph& g, double tol, std::size_t max_iterations,
                            std::uint64_t seed) {
    if (tol <= 0.0) fail(ErrorCode::kInvalidArgument, "tolerance must be positive");
    if (g.degree() == 0) fail(ErrorCode::kZeroDegree, "lambda_min is undefined for a 0-regular graph");
    // The all-ones vector is an eigenvector of A with eigenvalue 1, so it
    // sits at 0 for (I - A)/2 and projecting it out changes nothing.
    return 1.0 - 2.0 * shifted_power(g, -1.0, tol / 2.0, max_iterations, seed);
}

double rayleigh_quotient(const RegularGraph& g, std::span<const double> x) {
    if (x.size() != g.vertex_count()) {
        fail(ErrorCode::kInvalidArgument, "vector length " + std::to_string(x.size()) +
                                              " does not match n=" + std::to_string(g.vertex_count()));
    }
    double xx = 0.0;
    for (double v : x) xx += v * v;
    if (xx == 0.0) fail(ErrorCode::kZeroVector, "Rayleigh quotient of the zero vector");
    if (g.degree() == 0) return 0.0;
    double xax = 0.0;
    for (const auto& e : g.edges()) xax += 2.0 * x[e.u] * x[e.v];
    return xax / g.degree() / xx;
}

double signed_lambda_max(const RegularGraph& g, const Signing& signing) {
    if (signing.signs.size() != g.edge_count()) {
        fail(ErrorCode::kSigningMismatch, "signing does not cover the edge set");
    }
    if (g.degree() == 0) fail(ErrorCode::kZeroDegree, "signed spectrum of a 0-regular graph");
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const double inv = 1.0 / g.degree();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        const auto [u, v] = g.edges()[id];
        a(u, v) = a(v, u) = signing.signs[id] * inv;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::kNoConvergence, "dense eigensolver failed");
    return solver.eigenvalues().maxCoeff();
}

CheegerReport cheeger_check(const RegularGraph& g, std::uint32_t vertex_cap) {
    CheegerReport r;
    const EdgeExpansion exp = edge_expansion_exact(g, vertex_cap);
    r.h = exp.h;
    r.lambda2 = lambda2(g);
    const double d = g.degree();
    const double gap = std::max(0.0, 1.0 - r.lambda2);
    r.lower = d * gap / 2.0;
    r.upper = d * std::sqrt(2.0 * gap);
    constexpr double kSlack = 1e-9;
    r.ok = r.lower <= r.h + kSlack && r.h <= r.upper + kSlack;
    return r;
}

}  // namespace chroma
