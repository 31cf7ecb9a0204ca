#pragma once

#include <bit>
#include <cstdint>
#include <span>

#include "psolab/swarm.hpp"

namespace test_util {

inline bool bits_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool bits_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!bits_equal(a[i], b[i])) return false;
    return true;
}

inline bool bits_equal(const psolab::SwarmState& a, const psolab::SwarmState& b) {
    if (a.particles.size() != b.particles.size() || a.iteration != b.iteration) return false;
    if (!bits_equal(a.p_glob, b.p_glob) || !bits_equal(a.f_glob, b.f_glob)) return false;
    for (std::size_t i = 0; i < a.particles.size(); ++i) {
        const psolab::Particle& pa = a.particles[i];
        const psolab::Particle& pb = b.particles[i];
        if (!bits_equal(pa.x, pb.x) || !bits_equal(pa.v, pb.v) || !bits_equal(pa.p, pb.p) ||
            !bits_equal(pa.f_p, pb.f_p))
            return false;
    }
    return true;
}

} // namespace test_util
