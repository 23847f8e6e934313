#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mixfourier {

// splitmix64 step; used to whiten seeds and to derive independent child streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic per-task seed: stream `index` of a master seed.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x632be59bd9b4e019ull + index * 0x9e3779b97f4a7c15ull);
    std::uint64_t b = splitmix64(s);
    return a ^ (b + (index << 1) + 1);
}

// mt19937_64 wrapper with uniform doubles and polar-method normals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // standard normal via Marsaglia's polar method, spare cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, w, s;
        do {
            u = 2.0 * uniform() - 1.0;
            w = 2.0 * uniform() - 1.0;
            s = u * u + w * w;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = w * f;
        have_spare_ = true;
        return u * f;
    }

    // uniform integer in [0, n)
    std::uint64_t integer(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mixfourier
