#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mixfourier/rng.hpp"

namespace mixfourier {

// Discrete distribution on the real line: sorted atoms with weights summing to 1.
struct MixingDistribution {
    std::vector<double> support;
    std::vector<double> weights;
};

// Normalize weights, sort atoms ascending, keep weights aligned.
MixingDistribution make_mixing_distribution(std::vector<double> support,
                                            std::vector<double> weights);

// k-component Gaussian mixture with a single shared variance s2.
struct GaussianMixture {
    std::vector<double> means;
    std::vector<double> weights;
    double variance_s2 = 1.0;

    int order() const { return static_cast<int>(means.size()); }
    // variance parameter of the Fourier-side envelope exp(-v w^2)
    double v() const { return 0.5 * variance_s2; }
};

GaussianMixture make_mixture(std::vector<double> means, std::vector<double> weights,
                             double variance_s2);

// i.i.d. draws plus the seed that produced them. ecf_passes counts full
// passes over the data made by Fourier summaries; tests use it to check the
// pipeline touches the samples exactly once.
struct SampleSet {
    std::vector<double> values;
    std::uint64_t seed = 0;
    mutable std::uint64_t ecf_passes = 0;
};

double density(const GaussianMixture& m, double x);

std::complex<double> characteristic_function(const GaussianMixture& m, double omega);

SampleSet sample_mixture(const GaussianMixture& m, std::size_t n, std::uint64_t seed);

// The mixing distribution of the mean locations (variance dropped).
MixingDistribution mixing_distribution(const GaussianMixture& m);

}  // namespace mixfourier
