#include "mixfourier/em.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mixfourier/errors.hpp"
#include "mixfourier/fourier.hpp"
#include "mixfourier/rng.hpp"

namespace mixfourier {

namespace {

using detail::kEcfChunk;

struct ChunkStats {
    std::vector<double> nk;   // responsibility mass per component
    std::vector<double> sx;   // responsibility-weighted sample sum
    double ll = 0.0;
};

double component_norm(double s2) { return 1.0 / std::sqrt(2.0 * M_PI * s2); }

}  // namespace

double em_loglik(const GaussianMixture& m, const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n == 0) throw ConfigError("empty sample set");
    if (!(m.variance_s2 > 0.0)) throw ConfigError("variance must be positive");
    const std::size_t nblocks = (n + kEcfChunk - 1) / kEcfChunk;
    std::vector<double> partial(nblocks, 0.0);
    const double norm = component_norm(m.variance_s2);
    const double inv2s2 = 1.0 / (2.0 * m.variance_s2);
    const int k = m.order();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = b * kEcfChunk;
        const std::size_t hi = std::min(n, lo + kEcfChunk);
        double acc = 0.0;
        for (std::size_t j = lo; j < hi; ++j) {
            double p = 0.0;
            for (int i = 0; i < k; ++i) {
                const double d = samples[j] - m.means[i];
                p += m.weights[i] * norm * std::exp(-d * d * inv2s2);
            }
            acc += std::log(std::max(p, 1e-300));
        }
        partial[b] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

EmFit em_fit(const std::vector<double>& samples, const EmConfig& config) {
    const std::size_t n = samples.size();
    const int k = config.order;
    if (n == 0) throw ConfigError("empty sample set");
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw ConfigError("order must lie in [1, n]");
    if (!(config.tol > 0.0) || config.max_iter < 1) throw ConfigError("bad EM settings");

    // init: k distinct sample indices for the means, global moments otherwise
    Rng rng(config.seed);
    std::vector<std::size_t> idx;
    while (idx.size() < static_cast<std::size_t>(k)) {
        const std::size_t c = rng.integer(n);
        if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
    }
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : samples) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n);

    GaussianMixture m;
    for (std::size_t i : idx) m.means.push_back(samples[i]);
    m.weights.assign(k, 1.0 / k);
    m.variance_s2 = std::max(var, 1e-12);

    EmFit fit;
    fit.init = m;

    const std::size_t nblocks = (n + kEcfChunk - 1) / kEcfChunk;
    std::vector<ChunkStats> stats(nblocks);
    std::vector<double> gamma(n * static_cast<std::size_t>(k));
    std::vector<double> s2partial(nblocks);

    double ll_prev = 0.0;
    for (int it = 0; it < config.max_iter; ++it) {
        const double norm = component_norm(m.variance_s2);
        const double inv2s2 = 1.0 / (2.0 * m.variance_s2);

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
            const std::size_t lo = b * kEcfChunk;
            const std::size_t hi = std::min(n, lo + kEcfChunk);
            ChunkStats& cs = stats[b];
            cs.nk.assign(k, 0.0);
            cs.sx.assign(k, 0.0);
            cs.ll = 0.0;
            for (std::size_t j = lo; j < hi; ++j) {
                double* g = &gamma[j * k];
                double p = 0.0;
                for (int i = 0; i < k; ++i) {
                    const double d = samples[j] - m.means[i];
                    g[i] = m.weights[i] * norm * std::exp(-d * d * inv2s2);
                    p += g[i];
                }
                const double safe = std::max(p, 1e-300);
                cs.ll += std::log(safe);
                for (int i = 0; i < k; ++i) {
                    g[i] /= safe;
                    cs.nk[i] += g[i];
                    cs.sx[i] += g[i] * samples[j];
                }
            }
        }

        double ll = 0.0;
        std::vector<double> nk(k, 0.0), sx(k, 0.0);
        for (const ChunkStats& cs : stats) {
            ll += cs.ll;
            for (int i = 0; i < k; ++i) {
                nk[i] += cs.nk[i];
                sx[i] += cs.sx[i];
            }
        }
        fit.trace.push_back(ll);

        if (it > 0 && ll - ll_prev < config.tol) {
            fit.converged = true;
            fit.iterations = it;
            break;
        }
        ll_prev = ll;

        std::vector<double> mu_new(k);
        for (int i = 0; i < k; ++i)
            mu_new[i] = nk[i] > 0.0 ? sx[i] / nk[i] : m.means[i];

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
            const std::size_t lo = b * kEcfChunk;
            const std::size_t hi = std::min(n, lo + kEcfChunk);
            double acc = 0.0;
            for (std::size_t j = lo; j < hi; ++j) {
                const double* g = &gamma[j * k];
                for (int i = 0; i < k; ++i) {
                    const double d = samples[j] - mu_new[i];
                    acc += g[i] * d * d;
                }
            }
            s2partial[b] = acc;
        }
        double s2_new = 0.0;
        for (double p : s2partial) s2_new += p;
        s2_new /= static_cast<double>(n);
        if (s2_new < 1e-12) throw EstimationError("variance collapsed");

        for (int i = 0; i < k; ++i) {
            m.means[i] = mu_new[i];
            m.weights[i] = nk[i] / static_cast<double>(n);
        }
        m.variance_s2 = s2_new;
        fit.iterations = it + 1;
    }

    fit.model = m;
    fit.loglik = em_loglik(m, samples);
    return fit;
}

}  // namespace mixfourier
