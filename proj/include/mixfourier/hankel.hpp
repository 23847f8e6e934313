#pragma once

#include <Eigen/Dense>

#include "mixfourier/fourier.hpp"

namespace mixfourier {

// (K+1) x (K+1) Hankel matrix of grid values: entry (i, j) = value at
// q = i + j - K, so the top-left corner holds w_{-K} and the bottom-right w_K.
Eigen::MatrixXcd hankel(const FourierData& data);

// Entrywise demodulation weights: entry (i, j) = exp(u * w_{i+j-K}^2), the
// factor that maps the Hankel matrix of Y onto the Hankel matrix of
// exp(u w^2) Y. Throws ConfigError when u * Omega^2 > 300 (overflow guard).
Eigen::MatrixXd modulation(const FourierGrid& grid, double u);

// Singular values of a complex matrix, descending.
std::vector<double> singular_values(const Eigen::MatrixXcd& a);

// Singular values of E(u) .* H where H is the Hankel matrix of `data`.
std::vector<double> modulated_singular_values(const FourierData& data, double u);

// Left singular vectors k+1..K+1: orthonormal basis of the noise subspace.
Eigen::MatrixXcd noise_subspace(const Eigen::MatrixXcd& a, int k);

}  // namespace mixfourier
