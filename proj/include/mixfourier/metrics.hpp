#pragma once

#include <vector>

#include "mixfourier/model.hpp"

namespace mixfourier {

// 1-Wasserstein distance between two discrete distributions, computed exactly
// as the integral of |F_a - F_b| over the merged breakpoints.
double wasserstein1(const MixingDistribution& a, const MixingDistribution& b);

// |a - b| / |b|; b = 0 yields |a|.
double relative_error(double a, double b);

// Model selection summary for a fitted mixture on held data. Parameter count
// is 2k: k means, k - 1 free weights, one shared variance.
struct Scorecard {
    double loglik = 0.0;
    int parameters = 0;
    std::size_t n = 0;
    double aic = 0.0;
    double bic = 0.0;
};

Scorecard scorecard(const GaussianMixture& m, const std::vector<double>& samples);

// Small aggregation helpers for experiment summaries.
double mean(const std::vector<double>& xs);
double median(std::vector<double> xs);
double quantile(std::vector<double> xs, double q);

}  // namespace mixfourier
