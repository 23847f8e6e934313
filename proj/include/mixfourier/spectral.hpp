#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mixfourier/fourier.hpp"

namespace mixfourier {

namespace detail {
// Per-point kernels shared by the parallel and serial reference drivers.
double music_value(const Eigen::MatrixXcd& u2_adj, int half_count, const FourierGrid& grid,
                   double mu);
Eigen::MatrixXcd noise_subspace_adjoint(const FourierData& data, double u, int k);
}  // namespace detail

// Pseudospectrum J(mu) = |phi(mu)| / |U2^* phi(mu)| on a uniform location
// grid over [-pi/(2h), pi/(2h)), where phi stacks exp(i mu w_q) for
// q = -K..0 and U2 spans the noise subspace of the demodulated Hankel matrix.
struct MusicSpectrum {
    double mu_min = 0.0;
    double mu_step = 0.0;
    std::vector<double> values;

    double location(std::size_t i) const { return mu_min + mu_step * static_cast<double>(i); }
};

// data should already be demodulated (svr estimate applied); k is the model
// order; resolution is the number of grid points (default 2^12).
MusicSpectrum music_spectrum(const FourierData& data, double u, int k,
                             std::size_t resolution = 4096);

// k largest strict interior local maxima of the spectrum, returned as sorted
// locations. Falls back to globally largest values (deduplicated within one
// grid step) when fewer than k local maxima exist. Ties prefer smaller mu.
std::vector<double> music_peaks(const MusicSpectrum& spectrum, int k);

// Least squares fit of the mixture transform exp(-v w^2) sum theta_i
// exp(i mu_i w) to the data, theta constrained to the probability simplex by
// projected gradient descent.
struct WeightFit {
    std::vector<double> weights;
    double residual = 0.0;      // final stacked least squares residual norm
    int iterations = 0;
    bool rank_warning = false;  // design matrix numerically rank deficient
};

WeightFit estimate_weights(const FourierData& data, const std::vector<double>& means, double v);

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(const std::vector<double>& y);

// Average groups of locations closer than min_gap; weights of a group add up.
// Used by the pipeline to report a reduced order instead of duplicate means.
MixingDistribution merge_close_atoms(const MixingDistribution& d, double min_gap);

}  // namespace mixfourier
