#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psolab/errors.hpp"
#include "psolab/format.hpp"

namespace psolab {

enum class BenchmarkId { ackley, griewank, elliptic, rastrigin, rosenbrock, schwefel, sphere };

inline constexpr std::array<BenchmarkId, 7> all_benchmark_ids = {
    BenchmarkId::ackley,    BenchmarkId::griewank, BenchmarkId::elliptic, BenchmarkId::rastrigin,
    BenchmarkId::rosenbrock, BenchmarkId::schwefel, BenchmarkId::sphere,
};

/// A box-constrained fitness function with analytic gradient and known optimum.
/// Bounds are identical in every dimension; they are configurable per
/// experiment and recorded in reports, since classification thresholds scale
/// with the interval length.
struct Benchmark {
    BenchmarkId id;
    double mu;                  ///< sphere-term weight; meaningful for griewank only
    double lower;
    double upper;
    double g_threshold_factor;  ///< fraction of the interval length used by the G classifier
    int min_dimension;

    bool operator==(const Benchmark&) const = default;
};

inline std::string name(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::ackley: return "ackley";
        case BenchmarkId::griewank: return "griewank";
        case BenchmarkId::elliptic: return "elliptic";
        case BenchmarkId::rastrigin: return "rastrigin";
        case BenchmarkId::rosenbrock: return "rosenbrock";
        case BenchmarkId::schwefel: return "schwefel";
        case BenchmarkId::sphere: return "sphere";
    }
    throw ConfigError("unknown benchmark id");
}

inline std::optional<BenchmarkId> benchmark_id_from(std::string_view text) {
    for (BenchmarkId id : all_benchmark_ids)
        if (name(id) == text) return id;
    return std::nullopt;
}

inline constexpr double default_griewank_mu = 1.0 / 4000.0;

inline Benchmark make_benchmark(BenchmarkId id, double mu = default_griewank_mu) {
    Benchmark b;
    b.id = id;
    b.mu = mu;
    b.g_threshold_factor = 0.0015;
    b.min_dimension = 1;
    switch (id) {
        case BenchmarkId::ackley:
            b.lower = -32.0;
            b.upper = 32.0;
            break;
        case BenchmarkId::griewank:
            b.lower = -600.0;
            b.upper = 600.0;
            break;
        case BenchmarkId::elliptic:
            b.lower = -100.0;
            b.upper = 100.0;
            break;
        case BenchmarkId::rastrigin:
            b.lower = -5.12;
            b.upper = 5.12;
            break;
        case BenchmarkId::rosenbrock:
            b.lower = -30.0;
            b.upper = 30.0;
            b.g_threshold_factor = 0.005;
            b.min_dimension = 2;
            break;
        case BenchmarkId::schwefel:
            b.lower = -500.0;
            b.upper = 500.0;
            b.g_threshold_factor = 0.005;
            break;
        case BenchmarkId::sphere:
            b.lower = -100.0;
            b.upper = 100.0;
            break;
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("griewank mu must be positive and finite");
    return b;
}

/// Accepts a bare id ("rastrigin") or the compact griewank form
/// ("griewank:mu=0.00025").
inline Benchmark parse_benchmark(std::string_view text) {
    double mu = default_griewank_mu;
    const std::size_t colon = text.find(':');
    std::string_view id_part = text.substr(0, colon);
    if (colon != std::string_view::npos) {
        std::string_view suffix = text.substr(colon + 1);
        if (id_part != "griewank")
            throw ConfigError("mu is only meaningful with griewank: '" + std::string(text) + "'");
        if (suffix.substr(0, 3) != "mu=")
            throw ConfigError("malformed benchmark '" + std::string(text) + "', expected griewank:mu=<value>");
        suffix.remove_prefix(3);
        const auto result = std::from_chars(suffix.data(), suffix.data() + suffix.size(), mu);
        if (result.ec != std::errc{} || result.ptr != suffix.data() + suffix.size())
            throw ConfigError("malformed mu value in '" + std::string(text) + "'");
    }
    const std::optional<BenchmarkId> id = benchmark_id_from(id_part);
    if (!id) throw ConfigError("unknown benchmark '" + std::string(id_part) + "'");
    return make_benchmark(*id, mu);
}

/// The per-dimension search interval [lower, upper].
inline std::array<double, 2> bounds(const Benchmark& b) { return {b.lower, b.upper}; }

/// Per-dimension side length of the search box, the |I| of the classifier
/// thresholds.
inline double interval_length(const Benchmark& b) { return b.upper - b.lower; }

namespace detail {

inline void check_dimension(const Benchmark& b, std::size_t dimension) {
    if (dimension == 0) throw ConfigError("dimension must be >= 1");
    if (static_cast<int>(dimension) < b.min_dimension)
        throw ConfigError(name(b.id) + " requires dimension >= " + std::to_string(b.min_dimension));
}

inline void check_finite_input(std::span<const double> x) {
    for (double e : x)
        if (!std::isfinite(e)) throw NumericError("non-finite input to fitness evaluation");
}

/// d/dx [x sin(sqrt|x|)], extended by continuity with 0 at x = 0. The same
/// closed form holds on both sides of the origin.
inline double schwefel_term_derivative(double x) {
    if (x == 0.0) return 0.0;
    const double r = std::sqrt(std::abs(x));
    return std::sin(r) + 0.5 * r * std::cos(r);
}

inline constexpr double schwefel_offset = 418.9829;

/// The coordinate of Schwefel's minimizer, found once by bisecting the
/// one-dimensional gradient in [420, 422] and replicated across dimensions.
inline double schwefel_optimum_coordinate() {
    static const double coord = [] {
        double lo = 420.0;  // derivative positive here
        double hi = 422.0;  // negative here
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (schwefel_term_derivative(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return coord;
}

inline double elliptic_coefficient(std::size_t d, std::size_t dimension) {
    // exponent defined as 0 at dimension 1, where the function reduces to sphere
    const double exponent = dimension == 1 ? 0.0 : static_cast<double>(d) / static_cast<double>(dimension - 1);
    return std::pow(1.0e6, exponent);
}

} // namespace detail

inline double evaluate(const Benchmark& b, std::span<const double> x) {
    detail::check_dimension(b, x.size());
    detail::check_finite_input(x);
    const std::size_t dims = x.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    switch (b.id) {
        case BenchmarkId::sphere: {
            double acc = 0.0;
            for (double e : x) acc += e * e;
            return acc;
        }
        case BenchmarkId::rastrigin: {
            double acc = 0.0;
            for (double e : x) acc += e * e - 10.0 * std::cos(two_pi * e);
            return 10.0 * static_cast<double>(dims) + acc;
        }
        case BenchmarkId::ackley: {
            double sumsq = 0.0;
            double sumcos = 0.0;
            for (double e : x) {
                sumsq += e * e;
                sumcos += std::cos(two_pi * e);
            }
            const double n = static_cast<double>(dims);
            return -20.0 * std::exp(-0.2 * std::sqrt(sumsq / n)) - std::exp(sumcos / n) + 20.0 +
                   std::numbers::e;
        }
        case BenchmarkId::griewank: {
            double sumsq = 0.0;
            double prod = 1.0;
            for (std::size_t d = 0; d < dims; ++d) {
                sumsq += x[d] * x[d];
                prod *= std::cos(x[d] / std::sqrt(static_cast<double>(d + 1)));
            }
            return b.mu * sumsq - prod + 1.0;
        }
        case BenchmarkId::rosenbrock: {
            double acc = 0.0;
            for (std::size_t d = 0; d + 1 < dims; ++d) {
                const double gap = x[d + 1] - x[d] * x[d];
                const double off = 1.0 - x[d];
                acc += 100.0 * gap * gap + off * off;
            }
            return acc;
        }
        case BenchmarkId::schwefel: {
            double acc = 0.0;
            for (double e : x) acc += e * std::sin(std::sqrt(std::abs(e)));
            return detail::schwefel_offset * static_cast<double>(dims) - acc;
        }
        case BenchmarkId::elliptic: {
            double acc = 0.0;
            for (std::size_t d = 0; d < dims; ++d) acc += detail::elliptic_coefficient(d, dims) * x[d] * x[d];
            return acc;
        }
    }
    throw ConfigError("unknown benchmark id");
}

inline std::vector<double> gradient(const Benchmark& b, std::span<const double> x) {
    detail::check_dimension(b, x.size());
    detail::check_finite_input(x);
    const std::size_t dims = x.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> grad(dims, 0.0);
    switch (b.id) {
        case BenchmarkId::sphere: {
            for (std::size_t d = 0; d < dims; ++d) grad[d] = 2.0 * x[d];
            break;
        }
        case BenchmarkId::rastrigin: {
            for (std::size_t d = 0; d < dims; ++d)
                grad[d] = 2.0 * x[d] + 10.0 * two_pi * std::sin(two_pi * x[d]);
            break;
        }
        case BenchmarkId::ackley: {
            double sumsq = 0.0;
            double sumcos = 0.0;
            for (double e : x) {
                sumsq += e * e;
                sumcos += std::cos(two_pi * e);
            }
            const double n = static_cast<double>(dims);
            const double radius = std::sqrt(sumsq / n);
            const double exp_cos = std::exp(sumcos / n);
            for (std::size_t d = 0; d < dims; ++d) {
                // at the origin the radial term has no derivative; its cusp is a
                // measure-zero point and the entry is extended with 0
                const double radial =
                    radius == 0.0 ? 0.0 : 4.0 * std::exp(-0.2 * radius) * x[d] / (n * radius);
                grad[d] = radial + (two_pi / n) * std::sin(two_pi * x[d]) * exp_cos;
            }
            break;
        }
        case BenchmarkId::griewank: {
            for (std::size_t d = 0; d < dims; ++d) {
                double partial_prod = 1.0;
                for (std::size_t j = 0; j < dims; ++j) {
                    if (j == d) continue;
                    partial_prod *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
                }
                const double root = std::sqrt(static_cast<double>(d + 1));
                grad[d] = 2.0 * b.mu * x[d] + std::sin(x[d] / root) / root * partial_prod;
            }
            break;
        }
        case BenchmarkId::rosenbrock: {
            for (std::size_t d = 0; d < dims; ++d) {
                double g = 0.0;
                if (d + 1 < dims) {
                    const double gap = x[d + 1] - x[d] * x[d];
                    g += -400.0 * x[d] * gap - 2.0 * (1.0 - x[d]);
                }
                if (d > 0) g += 200.0 * (x[d] - x[d - 1] * x[d - 1]);
                grad[d] = g;
            }
            break;
        }
        case BenchmarkId::schwefel: {
            for (std::size_t d = 0; d < dims; ++d) grad[d] = -detail::schwefel_term_derivative(x[d]);
            break;
        }
        case BenchmarkId::elliptic: {
            for (std::size_t d = 0; d < dims; ++d)
                grad[d] = 2.0 * detail::elliptic_coefficient(d, dims) * x[d];
            break;
        }
    }
    return grad;
}

struct Optimum {
    std::vector<double> position;
    double value;
};

inline Optimum optimum(const Benchmark& b, int dimension) {
    detail::check_dimension(b, static_cast<std::size_t>(dimension > 0 ? dimension : 0));
    Optimum opt;
    switch (b.id) {
        case BenchmarkId::rosenbrock:
            opt.position.assign(dimension, 1.0);
            opt.value = 0.0;
            break;
        case BenchmarkId::schwefel:
            opt.position.assign(dimension, detail::schwefel_optimum_coordinate());
            // residual of order 1e-5 per dimension from the 418.9829 constant
            opt.value = evaluate(b, opt.position);
            break;
        default:
            opt.position.assign(dimension, 0.0);
            opt.value = 0.0;
            break;
    }
    return opt;
}

} // namespace psolab
