#pragma once

#include <stdexcept>
#include <string>

namespace mixfourier {

// Bad user-supplied configuration (grids, thresholds, file paths).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Estimation could not produce a result (e.g. every candidate cell rejected).
struct EstimationError : std::runtime_error {
    explicit EstimationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mixfourier
