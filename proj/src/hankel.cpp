#include "mixfourier/hankel.hpp"

#include <cmath>

#include "mixfourier/errors.hpp"

namespace mixfourier {

Eigen::MatrixXcd hankel(const FourierData& data) {
    const int K = data.grid.half_count();
    Eigen::MatrixXcd h(K + 1, K + 1);
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) h(i, j) = data.at(i + j - K);
    return h;
}

Eigen::MatrixXd modulation(const FourierGrid& grid, double u) {
    const double top = u * grid.omega_max() * grid.omega_max();
    if (top > 300.0) throw ConfigError("demodulation weight overflows: u * Omega^2 > 300");
    const int K = grid.half_count();
    Eigen::MatrixXd e(K + 1, K + 1);
    for (int i = 0; i <= K; ++i) {
        for (int j = 0; j <= K; ++j) {
            const double w = grid.omega(i + j - K);
            e(i, j) = std::exp(u * w * w);
        }
    }
    return e;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& a) {
    if (!a.allFinite()) throw ConfigError("matrix has non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::vector<double> modulated_singular_values(const FourierData& data, double u) {
    const Eigen::MatrixXcd h = hankel(data);
    const Eigen::MatrixXcd e = modulation(data.grid, u).cast<std::complex<double>>();
    return singular_values(e.cwiseProduct(h));
}

Eigen::MatrixXcd noise_subspace(const Eigen::MatrixXcd& a, int k) {
    if (k < 0 || k >= a.cols()) throw ConfigError("noise subspace needs 0 <= k < matrix size");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(a.cols() - k);
}

}  // namespace mixfourier
