#include "mixfourier/fourier.hpp"

#include <cmath>
#include <cstddef>

#include "mixfourier/errors.hpp"

namespace mixfourier {

FourierGrid::FourierGrid(double omega_max, int half_count)
    : omega_max_(omega_max), half_count_(half_count) {
    if (!(omega_max > 0.0)) throw ConfigError("grid needs a positive band limit");
    if (half_count < 1) throw ConfigError("grid needs at least one positive frequency");
}

double FourierGrid::omega(int q) const {
    const int a = q < 0 ? -q : q;
    if (a > half_count_) throw ConfigError("frequency index out of range");
    const double w = (a == half_count_) ? omega_max_ : a * step();
    return q < 0 ? -w : w;
}

std::vector<double> FourierGrid::frequencies() const {
    std::vector<double> f(size());
    for (int q = -half_count_; q <= half_count_; ++q) f[q + half_count_] = omega(q);
    return f;
}

namespace detail {

void ecf_block(const double* x, std::size_t lo, std::size_t hi, double h, int half_count,
               std::complex<double>* acc) {
    for (std::size_t j = lo; j < hi; ++j) {
        const std::complex<double> z = std::polar(1.0, h * x[j]);
        std::complex<double> p = z;
        acc[0] += p;
        for (int q = 2; q <= half_count; ++q) {
            p *= z;
            acc[q - 1] += p;
        }
    }
}

std::complex<double> ecf_point_block(const double* x, std::size_t lo, std::size_t hi,
                                     double omega) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = lo; j < hi; ++j) acc += std::polar(1.0, omega * x[j]);
    return acc;
}

}  // namespace detail

FourierData ecf(const SampleSet& samples, const FourierGrid& grid) {
    const std::size_t n = samples.values.size();
    if (n == 0) throw ConfigError("empty sample set");
    samples.ecf_passes += 1;
    const int K = grid.half_count();
    const double h = grid.step();
    const std::size_t nblocks = (n + detail::kEcfChunk - 1) / detail::kEcfChunk;
    std::vector<std::complex<double>> partial(nblocks * K, {0.0, 0.0});
    const double* x = samples.values.data();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = b * detail::kEcfChunk;
        const std::size_t hi = std::min(n, lo + detail::kEcfChunk);
        detail::ecf_block(x, lo, hi, h, K, &partial[b * K]);
    }

    FourierData out{grid, std::vector<std::complex<double>>(grid.size())};
    out.values[K] = {1.0, 0.0};
    for (int q = 1; q <= K; ++q) {
        std::complex<double> total{0.0, 0.0};
        for (std::size_t b = 0; b < nblocks; ++b) total += partial[b * K + (q - 1)];
        const std::complex<double> v = total / static_cast<double>(n);
        out.values[K + q] = v;
        out.values[K - q] = std::conj(v);
    }
    return out;
}

std::complex<double> ecf_at(const SampleSet& samples, double omega) {
    const std::size_t n = samples.values.size();
    if (n == 0) throw ConfigError("empty sample set");
    samples.ecf_passes += 1;
    const std::size_t nblocks = (n + detail::kEcfChunk - 1) / detail::kEcfChunk;
    std::vector<std::complex<double>> partial(nblocks, {0.0, 0.0});
    const double* x = samples.values.data();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = b * detail::kEcfChunk;
        const std::size_t hi = std::min(n, lo + detail::kEcfChunk);
        partial[b] = detail::ecf_point_block(x, lo, hi, omega);
    }

    std::complex<double> total{0.0, 0.0};
    for (std::size_t b = 0; b < nblocks; ++b) total += partial[b];
    return total / static_cast<double>(n);
}

FourierData synth_fourier(const GaussianMixture& m, const FourierGrid& grid, double sigma,
                          std::uint64_t seed) {
    if (sigma < 0.0) throw ConfigError("noise level must be non-negative");
    FourierData out{grid, std::vector<std::complex<double>>(grid.size())};
    const int K = grid.half_count();
    for (int q = -K; q <= K; ++q)
        out.values[q + K] = characteristic_function(m, grid.omega(q));
    if (sigma > 0.0) {
        Rng rng(seed);
        for (int q = 0; q < grid.size(); ++q) {
            const double re = sigma * rng.normal();
            const double im = sigma * rng.normal();
            out.values[q] += std::complex<double>{re, im};
        }
    }
    return out;
}

double cutoff_search(const SampleSet& samples, int t, double omega_init) {
    if (t < 1) throw ConfigError("bisection needs at least one step");
    if (!(omega_init > 0.0)) throw ConfigError("initial band must be positive");
    const std::size_t n = samples.values.size();
    if (n == 0) throw ConfigError("empty sample set");
    const double floor_level = 1.0 / std::sqrt(static_cast<double>(n));
    double lo = 0.0;
    double hi = omega_init;
    for (int i = 0; i < t; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(ecf_at(samples, mid)) < floor_level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double ecf_noise_bound(std::size_t n, double eps, int half_count) {
    if (n == 0) throw ConfigError("sample count must be positive");
    if (!(eps > 0.0)) throw ConfigError("deviation exponent must be positive");
    if (half_count < 0) throw ConfigError("negative grid size");
    const double expo = std::pow(static_cast<double>(n), -2.0 * eps);
    return (4.0 * half_count + 2.0) * std::exp(-0.5 * expo);
}

}  // namespace mixfourier
