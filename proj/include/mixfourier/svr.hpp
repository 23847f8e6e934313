#pragma once

#include <optional>
#include <vector>

#include "mixfourier/fourier.hpp"

namespace mixfourier {

// Search protocol for the singular value ratio estimator.
struct SvrConfig {
    std::vector<double> candidates;       // demodulation parameters u, ascending
    double threshold = 0.0;               // floor on the ratio numerator sigma(u, l)
    std::optional<int> known_order;       // when set: order fixed, threshold ignored
};

// Evenly spaced candidates 0, step, ..., covering [0, vmax].
std::vector<double> make_candidates(double vmax, double step);

// Threshold c / sqrt(n) matched to the ECF noise floor.
double threshold_for_samples(double c, std::size_t n);

// Ratio surface r(u, l) = sigma_l / sigma_{l+1} of the demodulated Hankel
// matrix, for every candidate u and l = 1..K. A vanishing denominator
// (below machine eps relative to sigma_1) yields +infinity.
struct SvrSurface {
    std::vector<double> candidates;
    int half_count = 0;
    std::vector<std::vector<double>> sigma;   // per candidate: sigma_1..sigma_{K+1}
    std::vector<std::vector<double>> ratio;   // per candidate: r(u,1)..r(u,K)
};

SvrSurface svr_surface(const FourierData& data, const std::vector<double>& candidates);

// Selected cell of the surface.
struct SvrEstimate {
    double v_hat = 0.0;
    int k_hat = 0;
    double ratio = 0.0;
    std::size_t candidate_index = 0;
};

// Argmax of the ratio surface. Known order: maximize r(., k) over candidates.
// Unknown order: maximize over cells whose numerator exceeds the threshold;
// throws EstimationError when every cell is rejected. Ties keep the earliest
// cell in (u ascending, l ascending) scan order.
SvrEstimate svr_select(const SvrSurface& surface, const SvrConfig& config);

// Convenience: surface + selection in one call.
SvrEstimate estimate_fourier(const FourierData& data, const SvrConfig& config);

// Sample-level wrapper: one ECF pass, then surface and selection.
struct SvrSampleResult {
    SvrEstimate estimate;
    SvrSurface surface;
    FourierData data;
};

SvrSampleResult estimate_samples(const SampleSet& samples, double omega_max, int half_count,
                                 const SvrConfig& config);

// Deterministic lower bound on r(v, k) - 1 under grid noise of sup norm
// sigma: positive once the noise is small enough, certifying that the ratio
// peaks at the true order. Proof-shaped constants, not asymptotically tight.
double ratio_lower_bound(double pi_min, double d_min, double sigma, int k, int half_count,
                         double v, double step, double omega_max);

}  // namespace mixfourier
