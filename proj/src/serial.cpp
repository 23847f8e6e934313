#include "mixfourier/serial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixfourier/errors.hpp"
#include "mixfourier/hankel.hpp"

namespace mixfourier::ref {

using detail::kEcfChunk;

FourierData ecf(const SampleSet& samples, const FourierGrid& grid) {
    const std::size_t n = samples.values.size();
    if (n == 0) throw ConfigError("empty sample set");
    samples.ecf_passes += 1;
    const int K = grid.half_count();
    const double h = grid.step();
    const std::size_t nblocks = (n + kEcfChunk - 1) / kEcfChunk;
    std::vector<std::complex<double>> partial(nblocks * K, {0.0, 0.0});
    const double* x = samples.values.data();

    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = b * kEcfChunk;
        const std::size_t hi = std::min(n, lo + kEcfChunk);
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

SvrSurface svr_surface(const FourierData& data, const std::vector<double>& candidates) {
    if (candidates.empty()) throw ConfigError("empty candidate grid");
    modulation(data.grid, candidates.back());

    const int K = data.grid.half_count();
    SvrSurface s;
    s.candidates = candidates;
    s.half_count = K;
    s.sigma.resize(candidates.size());
    s.ratio.resize(candidates.size());

    const double eps = std::numeric_limits<double>::epsilon();
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::vector<double> sv = modulated_singular_values(data, candidates[i]);
        std::vector<double> r(K);
        for (int l = 1; l <= K; ++l)
            r[l - 1] = (sv[l] <= eps * sv[0]) ? inf : sv[l - 1] / sv[l];
        s.sigma[i] = sv;
        s.ratio[i] = std::move(r);
    }
    return s;
}

MusicSpectrum music_spectrum(const FourierData& data, double u, int k,
                             std::size_t resolution) {
    const int K = data.grid.half_count();
    if (k < 1 || k > K) throw ConfigError("order must lie in [1, K]");
    if (resolution < 8) throw ConfigError("resolution too small");

    const Eigen::MatrixXcd u2_adj = detail::noise_subspace_adjoint(data, u, k);
    const double h = data.grid.step();

    MusicSpectrum s;
    s.mu_min = -M_PI / (2.0 * h);
    s.mu_step = M_PI / h / static_cast<double>(resolution);
    s.values.resize(resolution);
    for (std::size_t i = 0; i < resolution; ++i)
        s.values[i] = detail::music_value(u2_adj, K, data.grid, s.location(i));
    return s;
}

}  // namespace mixfourier::ref
