#include "mixfourier/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mixfourier/em.hpp"
#include "mixfourier/errors.hpp"

namespace mixfourier {

double wasserstein1(const MixingDistribution& a, const MixingDistribution& b) {
    std::vector<double> pts;
    pts.reserve(a.support.size() + b.support.size());
    pts.insert(pts.end(), a.support.begin(), a.support.end());
    pts.insert(pts.end(), b.support.begin(), b.support.end());
    std::sort(pts.begin(), pts.end());

    double w1 = 0.0;
    double fa = 0.0, fb = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double t = pts[i];
        while (ia < a.support.size() && a.support[ia] <= t) fa += a.weights[ia++];
        while (ib < b.support.size() && b.support[ib] <= t) fb += b.weights[ib++];
        if (i + 1 < pts.size()) w1 += std::abs(fa - fb) * (pts[i + 1] - t);
    }
    return w1;
}

double relative_error(double est, double truth) {
    if (truth == 0.0) return std::abs(est);
    return std::abs(est - truth) / std::abs(truth);
}

Scorecard scorecard(const GaussianMixture& m, const std::vector<double>& samples) {
    Scorecard s;
    s.loglik = em_loglik(m, samples);
    s.parameters = 2 * m.order();
    s.n = samples.size();
    s.aic = 2.0 * s.parameters - 2.0 * s.loglik;
    s.bic = s.parameters * std::log(static_cast<double>(s.n)) - 2.0 * s.loglik;
    return s;
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw ConfigError("mean of empty vector");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw ConfigError("quantile of empty vector");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile level outside [0, 1]");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

}  // namespace mixfourier
