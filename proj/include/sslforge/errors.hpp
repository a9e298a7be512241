#pragma once

#include <stdexcept>
#include <string>

namespace sslforge {

// Error categories map 1:1 onto the CLI exit codes:
//   ConfigError -> 2, DataError -> 3, AlgorithmError -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad parameter values, unknown algorithm/transform names, malformed configs.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Dataset contract violations: shape mismatches, non-finite values,
// unparseable files, degenerate labeled sets.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Failures inside a fit: infeasible constraints, singular covariance,
// non-finite objectives.
class AlgorithmError : public Error {
public:
    explicit AlgorithmError(const std::string& msg) : Error(msg) {}
};

}  // namespace sslforge
