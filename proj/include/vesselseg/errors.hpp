#pragma once

#include <stdexcept>
#include <string>

namespace vseg {

/// Invalid configuration or parameter combination. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A required input produced by an earlier stage is missing. CLI exit code 3.
struct MissingArtifactError : std::runtime_error {
    explicit MissingArtifactError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite value detected during numeric computation. CLI exit code 4.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or unsupported image file.
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File system read/write failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A balancing stratum required by the algorithm is empty.
struct BalanceError : std::runtime_error {
    explicit BalanceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Patch records do not cover each pixel exactly once.
struct CoverageError : std::runtime_error {
    explicit CoverageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible image or tensor dimensions.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A rate with zero denominator was requested.
struct UndefinedRateError : std::runtime_error {
    explicit UndefinedRateError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vseg
