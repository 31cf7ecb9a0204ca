#pragma once

#include <cstdint>

#include "psolab/analysis.hpp"
#include "psolab/benchmarks.hpp"
#include "psolab/random_stream.hpp"
#include "psolab/swarm.hpp"

namespace psolab {

/// Execute a full seeded run: initialization plus maxiter steps, one fitness
/// evaluation per particle per iteration. With trace_potential set, the swarm
/// potential is sampled once per iteration, after the attractor updates.
/// Classification is left unset; callers attach it via classify().
inline RunRecord run(const SwarmConfig& config, const VariantSchedule& schedule, const Benchmark& bench,
                     int dimension, bool trace_potential = false) {
    validate(config);
    RandomStream rng(config.seed);
    SwarmState state = init_swarm(config, bench, dimension, rng);

    RunRecord record;
    record.seed = config.seed;
    record.variant = config.variant;
    if (trace_potential) record.trace.emplace();
    for (int iteration = 1; iteration <= config.maxiter; ++iteration) {
        step(state, config, schedule, bench, rng);
        if (trace_potential) record.trace->per_iteration.push_back({iteration, swarm_potential(state)});
    }
    record.p_glob = std::move(state.p_glob);
    record.f_glob = state.f_glob;
    record.evaluations =
        static_cast<std::uint64_t>(config.n_particles) * (static_cast<std::uint64_t>(config.maxiter) + 1);
    return record;
}

} // namespace psolab
