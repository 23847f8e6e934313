#include "mixfourier/svr.hpp"

#include <cmath>
#include <limits>

#include "mixfourier/errors.hpp"
#include "mixfourier/hankel.hpp"

namespace mixfourier {

std::vector<double> make_candidates(double vmax, double step) {
    if (!(vmax >= 0.0) || !(step > 0.0)) throw ConfigError("bad candidate grid");
    const int m = static_cast<int>(std::floor(vmax / step + 0.5));
    std::vector<double> c(m + 1);
    for (int i = 0; i <= m; ++i) c[i] = i * step;
    return c;
}

double threshold_for_samples(double c, std::size_t n) {
    if (n == 0) throw ConfigError("sample count must be positive");
    return c / std::sqrt(static_cast<double>(n));
}

SvrSurface svr_surface(const FourierData& data, const std::vector<double>& candidates) {
    if (candidates.empty()) throw ConfigError("empty candidate grid");
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!(candidates[i] >= 0.0)) throw ConfigError("candidates must be non-negative");
        if (i > 0 && !(candidates[i] > candidates[i - 1]))
            throw ConfigError("candidates must be strictly increasing");
    }
    // trip the overflow guard up front rather than mid-scan
    modulation(data.grid, candidates.back());

    const int K = data.grid.half_count();
    SvrSurface s;
    s.candidates = candidates;
    s.half_count = K;
    s.sigma.resize(candidates.size());
    s.ratio.resize(candidates.size());

    const double eps = std::numeric_limits<double>::epsilon();
    const double inf = std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(candidates.size()); ++i) {
        const std::vector<double> sv = modulated_singular_values(data, candidates[i]);
        std::vector<double> r(K);
        for (int l = 1; l <= K; ++l) {
            const double num = sv[l - 1];
            const double den = sv[l];
            r[l - 1] = (den <= eps * sv[0]) ? inf : num / den;
        }
        s.sigma[i] = sv;
        s.ratio[i] = std::move(r);
    }
    return s;
}

SvrEstimate svr_select(const SvrSurface& surface, const SvrConfig& config) {
    const int K = surface.half_count;
    SvrEstimate best;
    double best_ratio = -std::numeric_limits<double>::infinity();
    bool found = false;

    if (config.known_order) {
        const int k = *config.known_order;
        if (k < 1 || k > K) throw ConfigError("known order must lie in [1, K]");
        for (std::size_t i = 0; i < surface.candidates.size(); ++i) {
            const double r = surface.ratio[i][k - 1];
            if (r > best_ratio) {
                best_ratio = r;
                best = {surface.candidates[i], k, r, i};
                found = true;
            }
        }
    } else {
        for (std::size_t i = 0; i < surface.candidates.size(); ++i) {
            for (int l = 1; l <= K; ++l) {
                if (!(surface.sigma[i][l - 1] > config.threshold)) continue;
                const double r = surface.ratio[i][l - 1];
                if (r > best_ratio) {
                    best_ratio = r;
                    best = {surface.candidates[i], l, r, i};
                    found = true;
                }
            }
        }
    }
    if (!found) throw EstimationError("no ratio cell passes the threshold");
    return best;
}

SvrEstimate estimate_fourier(const FourierData& data, const SvrConfig& config) {
    return svr_select(svr_surface(data, config.candidates), config);
}

SvrSampleResult estimate_samples(const SampleSet& samples, double omega_max, int half_count,
                                 const SvrConfig& config) {
    const FourierGrid grid(omega_max, half_count);
    FourierData data = ecf(samples, grid);
    SvrSurface surface = svr_surface(data, config.candidates);
    SvrEstimate est = svr_select(surface, config);
    return {est, std::move(surface), std::move(data)};
}

double ratio_lower_bound(double pi_min, double d_min, double sigma, int k, int half_count,
                         double v, double step, double omega_max) {
    if (!(pi_min > 0.0) || !(d_min > 0.0) || !(sigma > 0.0) || !(v > 0.0) || !(step > 0.0) ||
        !(omega_max > 0.0) || k < 1 || half_count < 1)
        throw ConfigError("bound needs positive inputs and k >= 1");
    double zeta = 0.0;
    for (int j = 1; j <= k; ++j) {
        double f = 1.0;
        for (int i = 2; i < j; ++i) f *= i;           // (j-1)!
        for (int i = 2; i <= k - j; ++i) f *= i;      // (k-j)!
        zeta = std::max(zeta, f);
    }
    const double geometry = std::pow(step * d_min / M_PI, 2 * k - 2);
    const double envelope = std::exp(-omega_max * omega_max * v);
    const double size = std::pow(half_count + 1.0, -1.5);
    return pi_min / sigma * geometry * envelope * size * zeta * zeta / k - 1.0;
}

}  // namespace mixfourier
