#include "mixfourier/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "mixfourier/errors.hpp"
#include "mixfourier/hankel.hpp"

namespace mixfourier {

namespace detail {

double music_value(const Eigen::MatrixXcd& u2_adj, int half_count, const FourierGrid& grid,
                   double mu) {
    Eigen::VectorXcd phi(half_count + 1);
    for (int i = 0; i <= half_count; ++i)
        phi(i) = std::polar(1.0, mu * grid.omega(i - half_count));
    const double den = (u2_adj * phi).norm();
    const double num = std::sqrt(half_count + 1.0);
    return num / std::max(den, 1e-300);
}

Eigen::MatrixXcd noise_subspace_adjoint(const FourierData& data, double u, int k) {
    const Eigen::MatrixXcd h = hankel(data);
    const Eigen::MatrixXcd e = modulation(data.grid, u).cast<std::complex<double>>();
    return noise_subspace(e.cwiseProduct(h), k).adjoint();
}

}  // namespace detail

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

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(resolution); ++i)
        s.values[i] = detail::music_value(u2_adj, K, data.grid, s.location(i));
    return s;
}

std::vector<double> music_peaks(const MusicSpectrum& spectrum, int k) {
    if (k < 1) throw ConfigError("need at least one peak");
    const std::size_t n = spectrum.values.size();
    const auto& v = spectrum.values;

    std::vector<std::size_t> local;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) local.push_back(i);
    // larger value first; ties toward smaller location
    auto by_value = [&](std::size_t a, std::size_t b) {
        return v[a] != v[b] ? v[a] > v[b] : a < b;
    };
    std::sort(local.begin(), local.end(), by_value);

    std::vector<std::size_t> chosen;
    for (std::size_t i : local) {
        if (chosen.size() == static_cast<std::size_t>(k)) break;
        chosen.push_back(i);
    }
    if (chosen.size() < static_cast<std::size_t>(k)) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::sort(all.begin(), all.end(), by_value);
        for (std::size_t i : all) {
            if (chosen.size() == static_cast<std::size_t>(k)) break;
            const bool near = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
                return (i > c ? i - c : c - i) <= 1;
            });
            if (!near) chosen.push_back(i);
        }
    }

    std::vector<double> mus;
    mus.reserve(chosen.size());
    for (std::size_t i : chosen) mus.push_back(spectrum.location(i));
    std::sort(mus.begin(), mus.end());
    return mus;
}

std::vector<double> project_simplex(const std::vector<double>& y) {
    const std::size_t n = y.size();
    if (n == 0) throw ConfigError("empty vector");
    std::vector<double> u(y);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(y[i] - theta, 0.0);
    return out;
}

WeightFit estimate_weights(const FourierData& data, const std::vector<double>& means,
                           double v) {
    const std::size_t k = means.size();
    if (k == 0) throw ConfigError("no means given");
    if (v < 0.0) throw ConfigError("negative variance parameter");

    const int K = data.grid.half_count();
    const int rows = 2 * (2 * K + 1);
    Eigen::MatrixXd a(rows, k);
    Eigen::VectorXd b(rows);
    for (int q = -K; q <= K; ++q) {
        const double w = data.grid.omega(q);
        const double env = std::exp(-v * w * w);
        for (std::size_t i = 0; i < k; ++i) {
            const std::complex<double> z = env * std::polar(1.0, means[i] * w);
            a(q + K, i) = z.real();
            a(q + K + 2 * K + 1, i) = z.imag();
        }
        b(q + K) = data.at(q).real();
        b(q + K + 2 * K + 1) = data.at(q).imag();
    }

    const Eigen::MatrixXd g = a.transpose() * a;
    const Eigen::VectorXd c = a.transpose() * b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    const double gmax = eig.eigenvalues().maxCoeff();
    const double gmin = eig.eigenvalues().minCoeff();
    const double lip = std::max(gmax, 1e-12);

    std::vector<double> theta(k, 1.0 / static_cast<double>(k));
    Eigen::VectorXd th = Eigen::Map<const Eigen::VectorXd>(theta.data(), k);
    int it = 0;
    for (; it < 10000; ++it) {
        const Eigen::VectorXd grad = g * th - c;
        std::vector<double> step(k);
        for (std::size_t i = 0; i < k; ++i) step[i] = th(i) - grad(i) / lip;
        const std::vector<double> next = project_simplex(step);
        double delta = 0.0;
        for (std::size_t i = 0; i < k; ++i) delta = std::max(delta, std::abs(next[i] - th(i)));
        for (std::size_t i = 0; i < k; ++i) th(i) = next[i];
        if (delta <= 1e-12) break;
    }

    // exact renormalization against accumulated rounding
    const double total = th.sum();
    WeightFit fit;
    fit.rank_warning = gmin < 1e-12 * std::max(gmax, 1.0);
    fit.weights.resize(k);
    for (std::size_t i = 0; i < k; ++i) fit.weights[i] = th(i) / total;
    fit.residual = (a * th - b).norm();
    fit.iterations = it;
    return fit;
}

MixingDistribution merge_close_atoms(const MixingDistribution& d, double min_gap) {
    if (d.support.empty()) throw ConfigError("empty distribution");
    std::vector<double> support;
    std::vector<double> weights;
    double pos = d.support[0] * d.weights[0];
    double mass = d.weights[0];
    double plain = d.support[0];
    std::size_t count = 1;
    auto flush = [&]() {
        support.push_back(mass > 0.0 ? pos / mass : plain / static_cast<double>(count));
        weights.push_back(mass);
    };
    for (std::size_t i = 1; i < d.support.size(); ++i) {
        if (d.support[i] - d.support[i - 1] < min_gap) {
            pos += d.support[i] * d.weights[i];
            plain += d.support[i];
            mass += d.weights[i];
            count += 1;
        } else {
            flush();
            pos = d.support[i] * d.weights[i];
            plain = d.support[i];
            mass = d.weights[i];
            count = 1;
        }
    }
    flush();
    double total = 0.0;
    for (double w : weights) total += w;
    if (total > 0.0)
        for (double& w : weights) w /= total;
    return {std::move(support), std::move(weights)};
}

}  // namespace mixfourier
