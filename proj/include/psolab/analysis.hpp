#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psolab/benchmarks.hpp"
#include "psolab/format.hpp"
#include "psolab/swarm.hpp"

namespace psolab {

/// Result quality labels: G = global optimum found, L = stuck in a non-global
/// local optimum, O = neither.
enum class Classification { G, L, O };

inline char label(Classification c) {
    switch (c) {
        case Classification::G: return 'G';
        case Classification::L: return 'L';
        case Classification::O: return 'O';
    }
    throw ConfigError("unknown classification");
}

inline std::optional<Classification> classification_from(char c) {
    switch (c) {
        case 'G': return Classification::G;
        case 'L': return Classification::L;
        case 'O': return Classification::O;
        default: return std::nullopt;
    }
}

/// G when every coordinate is within g_threshold_factor * |I| of the optimum
/// position; otherwise L when every gradient entry is at most 0.1 in absolute
/// value; otherwise O. Rosenbrock below dimension 4 has no non-global local
/// optimum, so its flat regions read as O rather than L.
inline Classification classify(std::span<const double> result, const Benchmark& bench, int dimension) {
    detail::check_dimension(bench, static_cast<std::size_t>(dimension > 0 ? dimension : 0));
    if (result.size() != static_cast<std::size_t>(dimension))
        throw ConfigError("result has " + std::to_string(result.size()) + " entries, expected " +
                          std::to_string(dimension));
    const Optimum opt = optimum(bench, dimension);
    const double tolerance = bench.g_threshold_factor * interval_length(bench);
    bool global = true;
    for (int d = 0; d < dimension; ++d) {
        if (!(std::abs(result[d] - opt.position[d]) <= tolerance)) {
            global = false;
            break;
        }
    }
    if (global) return Classification::G;
    if (bench.id == BenchmarkId::rosenbrock && dimension <= 3) return Classification::O;
    for (double g : gradient(bench, result))
        if (!(std::abs(g) <= 0.1)) return Classification::O;
    return Classification::L;
}

/// Per-iteration, per-dimension swarm potential of one run.
struct PotentialTrace {
    struct Sample {
        int iteration;
        std::vector<double> phi;

        bool operator==(const Sample&) const = default;
    };
    std::vector<Sample> per_iteration;

    bool operator==(const PotentialTrace&) const = default;
};

/// Serializes as plot-ready CSV: header `iteration,dim,phi`, one row per
/// (iteration, dimension), dimensions 1-based.
inline void write_trace_csv(const PotentialTrace& trace, std::ostream& out) {
    out << "iteration,dim,phi\n";
    for (const PotentialTrace::Sample& sample : trace.per_iteration)
        for (std::size_t d = 0; d < sample.phi.size(); ++d)
            out << sample.iteration << ',' << d + 1 << ',' << format_double(sample.phi[d]) << '\n';
}

/// Swarm potential: per dimension d, the square root of the sum over all
/// particles of 2.5*|v^d| + |p_glob^d - x^d|. Zero exactly when the swarm has
/// collapsed onto the global attractor with no velocity left.
inline std::vector<double> swarm_potential(const SwarmState& state) {
    const std::size_t dims = state.p_glob.size();
    std::vector<double> phi(dims, 0.0);
    for (const Particle& particle : state.particles)
        for (std::size_t d = 0; d < dims; ++d)
            phi[d] += 2.5 * std::abs(particle.v[d]) + std::abs(state.p_glob[d] - particle.x[d]);
    for (double& entry : phi) entry = std::sqrt(entry);
    return phi;
}

/// Potential of a single particle (0-based index): per dimension,
/// a*|v| + b_glob*|p_glob - x| + b_loc*|p - x|. Uses the configured weights;
/// pass b_loc_override to measure under the schedule's effective weight
/// instead.
inline std::vector<double> particle_potential(const SwarmState& state, int index, const SwarmConfig& config,
                                              std::optional<double> b_loc_override = std::nullopt) {
    if (index < 0 || index >= static_cast<int>(state.particles.size()))
        throw std::out_of_range("particle index " + std::to_string(index) + " out of range");
    const Particle& particle = state.particles[static_cast<std::size_t>(index)];
    const double b_loc = b_loc_override.value_or(config.b_loc);
    const std::size_t dims = state.p_glob.size();
    std::vector<double> psi(dims, 0.0);
    for (std::size_t d = 0; d < dims; ++d)
        psi[d] = config.a * std::abs(particle.v[d]) +
                 config.b_glob * std::abs(state.p_glob[d] - particle.x[d]) +
                 b_loc * std::abs(particle.p[d] - particle.x[d]);
    return psi;
}

/// Outcome of one seeded run.
struct RunRecord {
    std::uint64_t seed = 0;
    Variant variant = Variant::classical;
    std::vector<double> p_glob;
    double f_glob = 0.0;
    std::uint64_t evaluations = 0;
    std::optional<Classification> classification;
    std::optional<PotentialTrace> trace;

    bool operator==(const RunRecord&) const = default;
};

/// Mean value offset from the known optimum over G-classified records;
/// disengaged when no record is G ("n/a" in reports, never 0).
inline std::optional<double> precision(std::span<const RunRecord> records, const Benchmark& bench,
                                       int dimension) {
    const double opt_value = optimum(bench, dimension).value;
    double sum = 0.0;
    int count = 0;
    for (const RunRecord& record : records) {
        if (record.classification == Classification::G) {
            sum += record.f_glob - opt_value;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
}

} // namespace psolab
