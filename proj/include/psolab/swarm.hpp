#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psolab/benchmarks.hpp"
#include "psolab/errors.hpp"
#include "psolab/random_stream.hpp"

namespace psolab {

enum class Variant { classical, social_only, hybrid };

inline constexpr std::array<Variant, 3> all_variants = {Variant::classical, Variant::social_only,
                                                        Variant::hybrid};

inline std::string name(Variant v) {
    switch (v) {
        case Variant::classical: return "classical";
        case Variant::social_only: return "social-only";
        case Variant::hybrid: return "hybrid";
    }
    throw ConfigError("unknown variant");
}

inline std::optional<Variant> variant_from(std::string_view text) {
    for (Variant v : all_variants)
        if (name(v) == text) return v;
    return std::nullopt;
}

/// Parameter values recommended in the PSO literature.
inline constexpr double default_inertia_weight = 0.72984;
inline constexpr double default_attraction_weight = 1.496172;

struct SwarmConfig {
    double a = default_inertia_weight;        ///< inertia weight
    double b_glob = default_attraction_weight; ///< global-attraction weight
    double b_loc = default_attraction_weight;  ///< local-attraction weight, before any schedule override
    Variant variant = Variant::classical;
    int n_particles = 100;
    int maxiter = 500;
    std::uint64_t seed = 0;
};

inline void validate(const SwarmConfig& config) {
    if (config.n_particles < 1) throw ConfigError("n_particles must be >= 1");
    if (config.maxiter < 1) throw ConfigError("maxiter must be >= 1");
    if (!std::isfinite(config.a) || !std::isfinite(config.b_glob) || !std::isfinite(config.b_loc))
        throw ConfigError("PSO weights must be finite");
}

/// Iteration index after which b_loc is forced to 0. Disengaged for classical
/// runs; 0 for social-only (every iteration), floor(maxiter/2) for hybrid.
struct VariantSchedule {
    std::optional<int> switch_iteration;
};

inline VariantSchedule schedule_for(Variant variant, int maxiter) {
    switch (variant) {
        case Variant::classical: return {std::nullopt};
        case Variant::social_only: return {0};
        case Variant::hybrid: return {maxiter / 2};
    }
    throw ConfigError("unknown variant");
}

/// The b_loc actually applied at 1-based iteration `iteration`.
inline double effective_b_loc(const SwarmConfig& config, const VariantSchedule& schedule, int iteration) {
    if (iteration < 1 || iteration > config.maxiter)
        throw ConfigError("iteration must be in [1, maxiter]");
    if (schedule.switch_iteration && iteration > *schedule.switch_iteration) return 0.0;
    return config.b_loc;
}

struct Particle {
    std::vector<double> x;  ///< position
    std::vector<double> v;  ///< velocity
    std::vector<double> p;  ///< local attractor: best position this particle has visited
    double f_p = 0.0;       ///< cached fitness of p

    bool operator==(const Particle&) const = default;
};

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> p_glob;  ///< global attractor: best position any particle has visited
    double f_glob = 0.0;         ///< cached fitness of p_glob
    int iteration = 0;           ///< completed iterations

    bool operator==(const SwarmState&) const = default;
};

namespace detail {

inline double checked_fitness(const Benchmark& bench, std::span<const double> x, int particle,
                              int iteration) {
    const double fx = evaluate(bench, x);
    if (!std::isfinite(fx))
        throw NumericError("non-finite fitness for particle " + std::to_string(particle) +
                               " at iteration " + std::to_string(iteration),
                           particle, iteration);
    return fx;
}

} // namespace detail

/// Resample position entries that left [lo, hi]: each violated entry is
/// replaced by a fresh uniform draw, in ascending dimension order. In-bounds
/// entries are untouched and velocity is not part of the contract.
inline void handle_bounds(std::span<double> position, double lo, double hi, RandomStream& rng) {
    for (double& entry : position)
        if (!(entry >= lo && entry <= hi)) entry = rng.uniform(lo, hi);
}

/// One particle's movement-equation update, in place: velocity first, then
/// position. Exposed separately so the arithmetic can be pinned down with
/// forced r vectors.
inline void apply_movement(Particle& particle, std::span<const double> p_glob, double a, double b_glob,
                           double b_loc, std::span<const double> r_glob, std::span<const double> r_loc) {
    const std::size_t dims = particle.x.size();
    for (std::size_t d = 0; d < dims; ++d) {
        particle.v[d] = a * particle.v[d] + b_glob * r_glob[d] * (p_glob[d] - particle.x[d]) +
                        b_loc * r_loc[d] * (particle.p[d] - particle.x[d]);
        particle.x[d] += particle.v[d];
    }
}

/// Positions uniform over the search box, velocities zero, each local
/// attractor at its particle's position, global attractor at the best local
/// attractor (ties broken by lowest particle index).
inline SwarmState init_swarm(const SwarmConfig& config, const Benchmark& bench, int dimension,
                             RandomStream& rng) {
    validate(config);
    if (dimension < 1) throw ConfigError("dimension must be >= 1");
    detail::check_dimension(bench, static_cast<std::size_t>(dimension));
    if (!std::isfinite(bench.lower) || !std::isfinite(bench.upper) || !(bench.lower < bench.upper))
        throw ConfigError("benchmark bounds must be finite with lower < upper");

    SwarmState state;
    state.particles.resize(static_cast<std::size_t>(config.n_particles));
    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        Particle& particle = state.particles[i];
        particle.x.resize(static_cast<std::size_t>(dimension));
        for (double& entry : particle.x) entry = rng.uniform(bench.lower, bench.upper);
        particle.v.assign(static_cast<std::size_t>(dimension), 0.0);
        particle.p = particle.x;
        particle.f_p = detail::checked_fitness(bench, particle.p, static_cast<int>(i) + 1, 0);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < state.particles.size(); ++i)
        if (state.particles[i].f_p < state.particles[best].f_p) best = i;
    state.p_glob = state.particles[best].p;
    state.f_glob = state.particles[best].f_p;
    state.iteration = 0;
    return state;
}

/// One outer iteration. Phase 1 moves every particle against the global
/// attractor from the end of the previous iteration and applies bound
/// handling; phase 2 updates local and global attractors with <=-ties, one
/// fitness evaluation per particle.
inline void step(SwarmState& state, const SwarmConfig& config, const VariantSchedule& schedule,
                 const Benchmark& bench, RandomStream& rng) {
    if (state.iteration >= config.maxiter)
        throw ConfigError("iteration budget exhausted: " + std::to_string(state.iteration) + " of " +
                          std::to_string(config.maxiter));
    const int iteration = state.iteration + 1;
    const double b_loc = effective_b_loc(config, schedule, iteration);
    const std::size_t dims = state.p_glob.size();

    // r_loc is drawn even when the effective b_loc is 0, so the stream stays
    // aligned across variants sharing a seed
    std::vector<double> r_glob(dims);
    std::vector<double> r_loc(dims);
    for (Particle& particle : state.particles) {
        for (double& r : r_glob) r = rng.uniform01();
        for (double& r : r_loc) r = rng.uniform01();
        apply_movement(particle, state.p_glob, config.a, config.b_glob, b_loc, r_glob, r_loc);
        handle_bounds(particle.x, bench.lower, bench.upper, rng);
    }

    for (std::size_t i = 0; i < state.particles.size(); ++i) {
        Particle& particle = state.particles[i];
        const double fx = detail::checked_fitness(bench, particle.x, static_cast<int>(i) + 1, iteration);
        if (fx <= particle.f_p) {
            particle.p = particle.x;
            particle.f_p = fx;
        }
        if (fx <= state.f_glob) {
            state.p_glob = particle.x;
            state.f_glob = fx;
        }
    }
    state.iteration = iteration;
}

} // namespace psolab
