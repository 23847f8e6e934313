#pragma once

#include <cstdint>
#include <vector>

#include "mixfourier/model.hpp"

namespace mixfourier {

struct EmConfig {
    int order = 2;
    double tol = 1e-5;          // stop when the log likelihood gain drops below tol
    int max_iter = 1000;
    std::uint64_t seed = 0;     // initialization stream
};

struct EmFit {
    GaussianMixture model;
    GaussianMixture init;       // starting point drawn from the seed
    double loglik = 0.0;        // log likelihood of the final model
    std::vector<double> trace;  // log likelihood before each update
    int iterations = 0;
    bool converged = false;
};

// Expectation maximization for a shared-variance Gaussian mixture. Means are
// initialized from `order` distinct samples drawn at random, the variance from
// the sample variance, weights uniform. Throws EstimationError when the
// variance collapses below 1e-12.
EmFit em_fit(const std::vector<double>& samples, const EmConfig& config);

double em_loglik(const GaussianMixture& m, const std::vector<double>& samples);

}  // namespace mixfourier
