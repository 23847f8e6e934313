#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "mixfourier/errors.hpp"
#include "mixfourier/fourier.hpp"
#include "mixfourier/model.hpp"

using namespace mixfourier;

TEST_CASE("grid endpoints are exact") {
    const FourierGrid grid(1.6, 5);
    CHECK(grid.omega(0) == 0.0);
    CHECK(grid.omega(5) == 1.6);
    CHECK(grid.omega(-5) == -1.6);
    CHECK(grid.step() == doctest::Approx(0.32).epsilon(1e-15));
    CHECK(grid.size() == 11);
    for (int q = 1; q <= 5; ++q) CHECK(grid.omega(-q) == -grid.omega(q));
    CHECK_THROWS_AS(grid.omega(6), ConfigError);
    CHECK_THROWS_AS(FourierGrid(0.0, 5), ConfigError);
    CHECK_THROWS_AS(FourierGrid(1.0, 0), ConfigError);
}

TEST_CASE("grid frequencies enumerate -K..K") {
    const FourierGrid grid(2.0, 3);
    const auto f = grid.frequencies();
    REQUIRE(f.size() == 7);
    CHECK(f.front() == -2.0);
    CHECK(f[3] == 0.0);
    CHECK(f.back() == 2.0);
}

TEST_CASE("ecf is one at frequency zero and conjugate symmetric") {
    const auto m = make_mixture({0.3 * M_PI, M_PI, 1.6 * M_PI}, {1, 1, 1}, 0.9);
    const auto samples = sample_mixture(m, 5000, 11);
    const FourierGrid grid(1.5, 5);
    const auto data = ecf(samples, grid);
    CHECK(data.at(0) == std::complex<double>{1.0, 0.0});
    for (int q = 1; q <= 5; ++q) CHECK(data.at(-q) == std::conj(data.at(q)));
    CHECK(samples.ecf_passes == 1);
}

TEST_CASE("two point data gives a cosine ecf") {
    SampleSet samples;
    samples.values = {1.0, -1.0};
    const FourierGrid grid(2.0, 4);
    const auto data = ecf(samples, grid);
    for (int q = -4; q <= 4; ++q) {
        const double w = q * grid.step();
        CHECK(std::abs(data.at(q) - std::complex<double>{std::cos(w), 0.0}) < 1e-12);
    }
}

TEST_CASE("single frequency ecf agrees with the grid ecf") {
    const auto m = make_mixture({-0.5, 0.5}, {0.5, 0.5}, 1.0);
    const auto samples = sample_mixture(m, 20000, 42);
    const FourierGrid grid(1.6, 4);
    const auto data = ecf(samples, grid);
    for (int q = 1; q <= 4; ++q) {
        const auto single = ecf_at(samples, q * grid.step());
        CHECK(std::abs(single - data.at(q)) < 1e-12);
    }
    CHECK(samples.ecf_passes == 5);
}

TEST_CASE("ecf concentrates around the transform at the parametric rate") {
    const auto m = make_mixture({0.3 * M_PI, M_PI, 1.6 * M_PI}, {1, 1, 1}, 0.9);
    const FourierGrid grid(1.5, 5);
    const std::size_t n = 10000;
    const double band = 5.0 / std::sqrt(static_cast<double>(n));
    int within = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto samples = sample_mixture(m, n, 1000 + rep);
        const auto data = ecf(samples, grid);
        double worst = 0.0;
        for (int q = -5; q <= 5; ++q)
            worst = std::max(worst,
                             std::abs(data.at(q) - characteristic_function(m, grid.omega(q))));
        if (worst < band) ++within;
    }
    CHECK(within >= 199);
}

TEST_CASE("noiseless synthesis reproduces the transform bit for bit") {
    const auto m = make_mixture({-1.0, 0.5, 2.0}, {0.3, 0.3, 0.4}, 0.8);
    const FourierGrid grid(1.7, 6);
    const auto data = synth_fourier(m, grid, 0.0, 999);
    for (int q = -6; q <= 6; ++q)
        CHECK(data.at(q) == characteristic_function(m, grid.omega(q)));
}

TEST_CASE("synthetic noise level matches its target") {
    const auto m = make_mixture({0.0}, {1.0}, 1.0);
    const FourierGrid grid(1.0, 2);
    const double sigma = 0.3;
    std::vector<double> re_dev, im_dev;
    for (int rep = 0; rep < 10000; ++rep) {
        const auto data = synth_fourier(m, grid, sigma, 5000 + rep);
        const auto noise = data.at(1) - characteristic_function(m, grid.omega(1));
        re_dev.push_back(noise.real());
        im_dev.push_back(noise.imag());
    }
    auto sd = [](const std::vector<double>& xs) {
        double mu = 0.0;
        for (double x : xs) mu += x;
        mu /= xs.size();
        double acc = 0.0;
        for (double x : xs) acc += (x - mu) * (x - mu);
        return std::sqrt(acc / xs.size());
    };
    CHECK(sd(re_dev) == doctest::Approx(sigma).epsilon(0.03));
    CHECK(sd(im_dev) == doctest::Approx(sigma).epsilon(0.03));
}

TEST_CASE("synthetic noise breaks conjugate symmetry") {
    const auto m = make_mixture({0.0}, {1.0}, 1.0);
    const FourierGrid grid(1.0, 2);
    const auto data = synth_fourier(m, grid, 0.1, 77);
    CHECK(data.at(-1) != std::conj(data.at(1)));
    const auto again = synth_fourier(m, grid, 0.1, 77);
    for (int q = -2; q <= 2; ++q) CHECK(again.at(q) == data.at(q));
    CHECK_THROWS_AS(synth_fourier(m, grid, -0.1, 0), ConfigError);
}

TEST_CASE("cutoff search keeps the full bracket when the ecf never decays") {
    SampleSet samples;
    samples.values.assign(100, 0.0);  // |ecf| = 1 everywhere
    CHECK(cutoff_search(samples, 8, 10.0) == 10.0);
}

TEST_CASE("cutoff search lands on a dyadic bracket endpoint") {
    const auto m = make_mixture({0.0}, {1.0}, 1.0);
    const auto samples = sample_mixture(m, 10000, 21);
    const int t = 8;
    const double omega_init = 10.0;
    const double res = cutoff_search(samples, t, omega_init);
    const double unit = omega_init / 256.0;
    CHECK(res > 0.0);
    CHECK(res <= omega_init);
    const double steps = res / unit;
    CHECK(std::abs(steps - std::round(steps)) < 1e-9);
}

TEST_CASE("cutoff search locates the noise floor crossing of a standard normal") {
    // at n = 10^4 the ecf modulus falls below 1/sqrt(n) near omega = 3.03
    const auto m = make_mixture({0.0}, {1.0}, 1.0);
    const auto samples = sample_mixture(m, 10000, 47);
    const double res = cutoff_search(samples, 8, 10.0);
    CHECK(res == doctest::Approx(3.0078125).epsilon(1e-12));
    CHECK(std::abs(res - 3.03) <= 10.0 / 256.0 + 0.3);
    CHECK(cutoff_search(samples, 8, 10.0) == res);
}

TEST_CASE("cutoff search validates its protocol") {
    SampleSet samples;
    samples.values = {0.5};
    CHECK_THROWS_AS(cutoff_search(samples, 0, 10.0), ConfigError);
    CHECK_THROWS_AS(cutoff_search(samples, 8, 0.0), ConfigError);
    SampleSet empty;
    CHECK_THROWS_AS(cutoff_search(empty, 8, 10.0), ConfigError);
}

TEST_CASE("grid deviation bound is the union bound and may be vacuous") {
    const std::size_t n = 10000;
    const double eps = 0.1;
    const int K = 5;
    const double expect =
        (4.0 * K + 2.0) * std::exp(-0.5 * std::pow(static_cast<double>(n), -2.0 * eps));
    const double got = ecf_noise_bound(n, eps, K);
    CHECK(got == doctest::Approx(expect).epsilon(1e-15));
    CHECK(got > 1.0);  // returned raw, not clipped
    CHECK(got == doctest::Approx(20.324).epsilon(1e-3));
    CHECK(ecf_noise_bound(n, eps, 10) > got);
}

TEST_CASE("empty sample sets are rejected") {
    SampleSet empty;
    const FourierGrid grid(1.0, 2);
    CHECK_THROWS_AS(ecf(empty, grid), ConfigError);
    CHECK_THROWS_AS(ecf_at(empty, 1.0), ConfigError);
}
