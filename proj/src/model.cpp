#include "mixfourier/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mixfourier/errors.hpp"

namespace mixfourier {

namespace {

void normalize_weights(std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw ConfigError("weights must be non-negative");
        total += x;
    }
    if (!(total > 0.0)) throw ConfigError("weights must have positive sum");
    for (double& x : w) x /= total;
}

}  // namespace

MixingDistribution make_mixing_distribution(std::vector<double> support,
                                            std::vector<double> weights) {
    if (support.empty() || support.size() != weights.size())
        throw ConfigError("mixing distribution needs matching non-empty support and weights");
    normalize_weights(weights);
    std::vector<std::size_t> idx(support.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    MixingDistribution d;
    d.support.reserve(support.size());
    d.weights.reserve(weights.size());
    for (std::size_t i : idx) {
        d.support.push_back(support[i]);
        d.weights.push_back(weights[i]);
    }
    return d;
}

GaussianMixture make_mixture(std::vector<double> means, std::vector<double> weights,
                             double variance_s2) {
    if (means.empty() || means.size() != weights.size())
        throw ConfigError("mixture needs matching non-empty means and weights");
    if (!(variance_s2 > 0.0)) throw ConfigError("variance must be positive");
    normalize_weights(weights);
    return {std::move(means), std::move(weights), variance_s2};
}

double density(const GaussianMixture& m, double x) {
    const double s2 = m.variance_s2;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * s2);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.means.size(); ++i) {
        const double d = x - m.means[i];
        acc += m.weights[i] * norm * std::exp(-d * d / (2.0 * s2));
    }
    return acc;
}

std::complex<double> characteristic_function(const GaussianMixture& m, double omega) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < m.means.size(); ++i)
        acc += m.weights[i] * std::polar(1.0, m.means[i] * omega);
    return std::exp(-m.v() * omega * omega) * acc;
}

SampleSet sample_mixture(const GaussianMixture& m, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ConfigError("sample count must be positive");
    std::vector<double> cum(m.weights.size());
    std::partial_sum(m.weights.begin(), m.weights.end(), cum.begin());
    cum.back() = 1.0;
    const double s = std::sqrt(m.variance_s2);
    Rng rng(seed);
    SampleSet out;
    out.seed = seed;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = rng.uniform();
        const std::size_t c =
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        out.values[j] = m.means[std::min(c, cum.size() - 1)] + s * rng.normal();
    }
    return out;
}

MixingDistribution mixing_distribution(const GaussianMixture& m) {
    return make_mixing_distribution(m.means, m.weights);
}

}  // namespace mixfourier
