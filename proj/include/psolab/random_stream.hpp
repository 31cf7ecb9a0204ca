#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace psolab {

/// Deterministic uniform stream backing a single optimization run.
///
/// Every random quantity of a run (initial positions, the r_glob/r_loc
/// movement vectors, bound-handling resamples) is drawn from one stream in a
/// fixed order, so a seed fully determines the trajectory. The generator
/// identity is recorded in report metadata; changing it invalidates
/// regression fixtures.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw from [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw from [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    static constexpr std::string_view generator_id() { return "mt19937_64-u53"; }

private:
    std::mt19937_64 engine_;
};

} // namespace psolab
