#pragma once

#include <stdexcept>
#include <string>

namespace eegdec {

// Shape/dimension mismatches between tensors or layer configs.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inputs too short for a kernel, pool, window or crop.
struct TooShortError : std::runtime_error {
    explicit TooShortError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad on-disk data: wrong magic, truncated payload, missing file.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dataset-level problems: missing electrodes, empty sets, bad labels.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or inconsistent configuration (unbuildable architectures etc.).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime failures during optimization (NaN loss, divergence).
struct TrainingError : std::runtime_error {
    explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eegdec
