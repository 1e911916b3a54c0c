#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chroma/graphs.hpp"

namespace chroma {

enum class SpectrumMethod { kDense, kDeflatedIteration };

// Normalized-adjacency eigenvalues, descending, with the largest
// |Ax - lambda x|_inf over the reported eigenpairs.
struct Spectrum {
    std::vector<double> eigenvalues;
    SpectrumMethod method = SpectrumMethod::kDense;
    double residual = 0.0;
};

struct SpectralOptions {
    std::uint32_t dense_cap = 4096;
    double tol = 1e-7;  // iterative path only
    std::size_t max_iterations = 2'000'000;
    std::uint64_t seed = 0x5eedULL;
};

Spectrum full_spectrum(const RegularGraph& g, std::uint32_t dense_cap = 4096);

// Second-largest eigenvalue with multiplicity. Exactly 1.0 for d = 0 and
// for disconnected graphs.
double lambda2(const RegularGraph& g, const SpectralOptions& options = {});
double lambda_min(const RegularGraph& g, const SpectralOptions& options = {});

// Power iteration on (I + A)/2 restricted to the complement of the
// all-ones vector (resp. on (I - A)/2 for lambda_min). Used above the
// dense cap and for cross-validation below it.
double lambda2_iterative(const RegularGraph& g, double tol, std::size_t max_iterations,
                         std::uint64_t seed = 0x5eedULL);
double lambda_min_iterative(const RegularGraph& g, double tol, std::size_t max_iterations,
                            std::uint64_t seed = 0x5eedULL);

double rayleigh_quotient(const RegularGraph& g, std::span<const double> x);

// Largest eigenvalue of the signed normalized adjacency: the new part of a
// 2-lift's spectrum.
double signed_lambda_max(const RegularGraph& g, const Signing& signing);

struct CheegerReport {
    double lambda2 = 1.0;
    double lower = 0.0;
    double h = 0.0;
    double upper = 0.0;
    bool ok = false;
};

CheegerReport cheeger_check(const RegularGraph& g, std::uint32_t vertex_cap = 24);

}  // namespace chroma
