#include "mixfourier/pipeline.hpp"

#include <chrono>

#include "mixfourier/errors.hpp"

namespace mixfourier {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

MixingDistribution EstimationResult::mixing() const {
    return make_mixing_distribution(means, weights);
}

EstimationResult estimate_fourier_full(const FourierData& data, const PipelineConfig& config) {
    EstimationResult out;

    auto t0 = std::chrono::steady_clock::now();
    const SvrSurface surface = svr_surface(data, config.svr.candidates);
    SvrEstimate sel;
    try {
        sel = svr_select(surface, config.svr);
    } catch (const EstimationError&) {
        out.svr_ms = ms_since(t0);
        out.order_rejected = true;
        return out;
    }
    out.svr_ms = ms_since(t0);
    out.v_hat = sel.v_hat;
    out.s2_hat = 2.0 * sel.v_hat;
    out.k_hat = sel.k_hat;
    out.ratio = sel.ratio;

    t0 = std::chrono::steady_clock::now();
    const MusicSpectrum spec =
        music_spectrum(data, sel.v_hat, sel.k_hat, config.music_resolution);
    std::vector<double> means = music_peaks(spec, sel.k_hat);
    out.music_ms = ms_since(t0);

    const double gap = config.merge_gap > 0.0 ? config.merge_gap
                                              : spec.mu_step * (1.0 + 1e-9);
    if (means.size() > 1) {
        std::vector<double> uniform(means.size(), 1.0 / static_cast<double>(means.size()));
        const MixingDistribution merged = merge_close_atoms({means, uniform}, gap);
        if (merged.support.size() < means.size()) {
            out.merged_means = true;
            means = merged.support;
        }
    }
    out.k_hat = static_cast<int>(means.size());

    t0 = std::chrono::steady_clock::now();
    const WeightFit fit = estimate_weights(data, means, sel.v_hat);
    out.weights_ms = ms_since(t0);
    out.weight_rank_warning = fit.rank_warning;
    out.means = std::move(means);
    out.weights = fit.weights;
    return out;
}

EstimationResult estimate(const SampleSet& samples, double omega_max, int half_count,
                          const PipelineConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const FourierGrid grid(omega_max, half_count);
    const FourierData data = ecf(samples, grid);
    const double ecf_ms = ms_since(t0);
    EstimationResult out = estimate_fourier_full(data, config);
    out.ecf_ms = ecf_ms;
    return out;
}

}  // namespace mixfourier
