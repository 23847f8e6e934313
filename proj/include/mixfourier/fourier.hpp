#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mixfourier/model.hpp"

namespace mixfourier {

namespace detail {
// Fixed accumulation block size shared by parallel and serial reference
// kernels; keeps reduction order, and therefore bits, thread-count invariant.
inline constexpr std::size_t kEcfChunk = 8192;

// Per-block kernels shared by both drivers.
void ecf_block(const double* x, std::size_t lo, std::size_t hi, double h, int half_count,
               std::complex<double>* acc);
std::complex<double> ecf_point_block(const double* x, std::size_t lo, std::size_t hi,
                                     double omega);
}  // namespace detail

// Symmetric frequency grid w_q = q * Omega / K for q = -K..K.
class FourierGrid {
  public:
    FourierGrid(double omega_max, int half_count);

    double omega_max() const { return omega_max_; }
    int half_count() const { return half_count_; }
    double step() const { return omega_max_ / half_count_; }
    int size() const { return 2 * half_count_ + 1; }

    // q in [-K, K]; endpoints are exactly +-Omega, q = 0 is exactly 0
    double omega(int q) const;

    std::vector<double> frequencies() const;

  private:
    double omega_max_;
    int half_count_;
};

// Grid samples of a Fourier summary, stored q = -K..K.
struct FourierData {
    FourierGrid grid;
    std::vector<std::complex<double>> values;

    const std::complex<double>& at(int q) const { return values[q + grid.half_count()]; }
};

// Empirical characteristic function on the grid. One pass over the samples;
// conjugate symmetry holds exactly and the q = 0 entry is exactly 1.
FourierData ecf(const SampleSet& samples, const FourierGrid& grid);

// ECF at a single frequency (one pass over the samples).
std::complex<double> ecf_at(const SampleSet& samples, double omega);

// Exact transform on the grid plus i.i.d. complex Gaussian noise of level
// sigma per real component. sigma = 0 returns the exact transform bit for bit.
FourierData synth_fourier(const GaussianMixture& m, const FourierGrid& grid, double sigma,
                          std::uint64_t seed);

// Bisection for the frequency where |ECF| falls under 1/sqrt(n). Starts from
// the bracket [0, omega_init]; t halvings; returns the upper endpoint.
double cutoff_search(const SampleSet& samples, int t, double omega_init);

// Union bound on P(max_q |ECF - CF| >= n^(-eps - 1/2)) over the 2K+1 grid
// frequencies. Returned raw; may exceed 1 when vacuous.
double ecf_noise_bound(std::size_t n, double eps, int half_count);

}  // namespace mixfourier
