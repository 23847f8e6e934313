#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mixfourier/em.hpp"
#include "mixfourier/metrics.hpp"
#include "mixfourier/pipeline.hpp"

namespace mixfourier {

// Frequency band sqrt((2k-2)/v) balancing envelope decay against the number
// of informative grid points. Defined for k >= 2.
double optimal_cutoff(int k, double v);

// Smallest mean separation solvable at grid-noise level noise_sup.
double resolution_limit_noise(double v, int k, double pi_min, double noise_sup);

// Sample-size form with noise level 1/(pi_min sqrt(n)).
double resolution_limit_samples(double v, int k, double pi_min, std::size_t n);

// One Monte-Carlo trial of an order/variance recovery experiment.
struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double srf = 0.0;
    double snr = 0.0;
    double d_min = 0.0;
    double sigma = 0.0;
    int k_true = 0;
    int k_hat = 0;
    double v_hat = 0.0;
    double w1 = std::numeric_limits<double>::quiet_NaN();  // unused in order-only trials
    double runtime_ms = 0.0;   // kept out of the CSV to preserve byte-identical reruns
    bool success = false;
};

// Random order-recovery trials on a log(SRF) x log(SNR) rectangle. Per trial:
// equal weights, v = 1, band at the k-dependent optimum, (k+1)x(k+1) Hankel,
// equally spaced means of gap pi/(SRF * Omega) centered at 0, Fourier-domain
// noise of level sigma = pi_min/SNR, threshold 2 sigma. Success means the
// selected order equals k.
struct PhaseConfig {
    int k = 2;
    std::size_t trials = 2000;
    double log_srf_min = 0.0;
    double log_srf_max = 3.0;
    double log_snr_min = 2.0;
    double log_snr_max = 10.0;
    bool known_variance = true;
    std::uint64_t seed = 0;
    double v_true = 1.0;
    double v_grid_max = 2.0;    // unknown-variance search grid
    double v_grid_step = 0.02;
    double threshold_scale = 2.0;
};

TrialRecord phase_trial(const PhaseConfig& config, std::size_t trial);
std::vector<TrialRecord> phase_transition(const PhaseConfig& config);

// Logistic regression of success on (log SRF, log SNR); boundary_slope is the
// slope of the zero level line in the log-log plane, expected near 2k.
struct LogisticFit {
    double intercept = 0.0;
    double coef_log_srf = 0.0;
    double coef_log_snr = 0.0;
    double boundary_slope = 0.0;
    int iterations = 0;
};

LogisticFit fit_transition_slope(const std::vector<TrialRecord>& records);

// Success rate per log-SNR bin, averaged over the SRF axis.
std::vector<double> success_by_snr_bin(const std::vector<TrialRecord>& records,
                                       double log_snr_min, double log_snr_max, int bins);

// Head-to-head row for the EM comparison experiments.
struct CompareRow {
    double separation = std::numeric_limits<double>::quiet_NaN();  // sweep runs only
    std::size_t n = 0;
    std::size_t trial = 0;
    std::string method;        // "proposed" or "em"
    double var_rel_err = 0.0;
    double w1 = 0.0;
    double runtime_ms = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
};

// Order selection outcome with the ratio threshold in sample-noise units,
// tracked alongside the comparison rows.
struct OrderCheck {
    std::size_t n = 0;
    std::size_t trial = 0;
    bool success = false;
};

struct CompareConfig {
    GaussianMixture model;
    std::vector<std::size_t> n_list;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    int half_count = 4;
    double omega_init = 1.6;   // bisection bracket; keep the whole band above the noise floor
    int bisection_t = 8;
    double v_max = 2.0;
    double v_step = 0.01;
    double order_threshold_scale = 20.0;  // T = scale/sqrt(n) for the order check
    double em_tol = 1e-5;
    int em_max_iter = 1000;
};

struct CompareResult {
    std::vector<CompareRow> rows;      // proposed row then em row per (n, trial)
    std::vector<OrderCheck> order;     // one per (n, trial)
};

CompareResult compare_em(const CompareConfig& config);

// Table-style separation sweep: two symmetric components at +-separation/2,
// fixed n, known order. Rows carry the separation in the leading column.
struct SweepConfig {
    std::vector<double> separations;
    std::size_t n = 5000;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    int half_count = 8;
    double omega_init = 1.6;
    int bisection_t = 8;
    double v_max = 2.0;
    double v_step = 0.01;
    double em_tol = 1e-5;
    int em_max_iter = 1000;
};

std::vector<CompareRow> separation_sweep(const SweepConfig& config);

}  // namespace mixfourier
