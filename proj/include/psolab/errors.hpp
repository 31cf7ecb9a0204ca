#pragma once

#include <stdexcept>
#include <string>

namespace psolab {

/// Invalid configuration: bad dimension, malformed parameters, bad plan files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value produced or consumed by a fitness evaluation. When raised
/// from inside a run, carries the 1-based particle index and the iteration
/// (0 = initialization).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, int particle = -1, int iteration = -1)
        : std::runtime_error(what), particle_(particle), iteration_(iteration) {}

    int particle() const { return particle_; }
    int iteration() const { return iteration_; }

private:
    int particle_;
    int iteration_;
};

/// Filesystem failure, reported with path context.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace psolab
