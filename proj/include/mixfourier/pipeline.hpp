#pragma once

#include <cstdint>
#include <optional>

#include "mixfourier/svr.hpp"
#include "mixfourier/spectral.hpp"

namespace mixfourier {

// Full estimate from samples or from Fourier data: variance and order by
// singular value ratios, means by subspace pseudospectrum, weights by
// constrained least squares.
struct EstimationResult {
    double v_hat = 0.0;
    double s2_hat = 0.0;
    int k_hat = 0;
    std::vector<double> means;
    std::vector<double> weights;
    double ratio = 0.0;           // value of the selected ratio cell
    bool merged_means = false;    // pseudospectrum peaks collapsed; order reduced
    bool order_rejected = false;  // every ratio cell under threshold; later stages skipped
    bool weight_rank_warning = false;
    // wall clock per stage, milliseconds
    double ecf_ms = 0.0;
    double svr_ms = 0.0;
    double music_ms = 0.0;
    double weights_ms = 0.0;

    GaussianMixture mixture() const { return {means, weights, 2.0 * v_hat}; }
    MixingDistribution mixing() const;
};

struct PipelineConfig {
    SvrConfig svr;
    double merge_gap = 0.0;           // <= 0: one pseudospectrum grid step
    std::size_t music_resolution = 4096;
};

EstimationResult estimate_fourier_full(const FourierData& data, const PipelineConfig& config);

// Samples are read exactly once (a single ECF pass); everything downstream
// works on the grid data.
EstimationResult estimate(const SampleSet& samples, double omega_max, int half_count,
                          const PipelineConfig& config);

}  // namespace mixfourier
