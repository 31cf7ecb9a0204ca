#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "psolab/analysis.hpp"
#include "psolab/benchmarks.hpp"
#include "psolab/errors.hpp"
#include "psolab/format.hpp"
#include "psolab/run.hpp"
#include "psolab/swarm.hpp"

namespace psolab {

/// One table cell: a (benchmark, dimension, variant) combination repeated
/// n_runs times with seeds base_seed + run_index.
struct PlanCell {
    Benchmark benchmark;
    int dimension = 3;
    Variant variant = Variant::classical;
    int n_runs = 50;
    std::uint64_t base_seed = 0;
};

struct ExperimentPlan {
    std::vector<PlanCell> cells;
    int n_particles = 100;
    int maxiter = 500;
    double a = default_inertia_weight;
    double b_glob = default_attraction_weight;
    double b_loc = default_attraction_weight;
    bool trace_potential = false;
};

/// Classification counts and precision for one cell.
struct CellSummary {
    std::string function;
    std::optional<double> mu;  // griewank only
    int dimension = 0;
    Variant variant = Variant::classical;
    int runs = 0;
    int g = 0;
    int l = 0;
    int o = 0;
    int failed = 0;
    std::optional<double> precision;

    bool operator==(const CellSummary&) const = default;
};

struct ReportMetadata {
    std::string generator;
    double a = default_inertia_weight;
    double b_glob = default_attraction_weight;
    double b_loc = default_attraction_weight;
    int n_particles = 0;
    int maxiter = 0;
    std::map<std::string, std::array<double, 2>> bounds;  // per function used
    std::string timestamp;

    bool operator==(const ReportMetadata&) const = default;
};

struct ExperimentReport {
    std::vector<CellSummary> cells;
    ReportMetadata metadata;
    std::vector<std::string> failures;  // one message per quarantined run

    bool operator==(const ExperimentReport&) const = default;
};

namespace detail {

inline std::string timestamp_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string describe_cell(const PlanCell& cell) {
    std::string text = name(cell.benchmark.id);
    if (cell.benchmark.id == BenchmarkId::griewank) text += ":mu=" + format_double(cell.benchmark.mu);
    return text + " D" + std::to_string(cell.dimension) + " " + name(cell.variant);
}

} // namespace detail

inline void validate_plan(const ExperimentPlan& plan) {
    if (plan.n_particles < 1) throw ConfigError("plan n_particles must be >= 1");
    if (plan.maxiter < 1) throw ConfigError("plan maxiter must be >= 1");
    if (!std::isfinite(plan.a) || !std::isfinite(plan.b_glob) || !std::isfinite(plan.b_loc))
        throw ConfigError("plan weights must be finite");
    for (const PlanCell& cell : plan.cells) {
        if (cell.n_runs < 1) throw ConfigError("cell n_runs must be >= 1");
        detail::check_dimension(cell.benchmark, static_cast<std::size_t>(cell.dimension > 0 ? cell.dimension : 0));
        if (!std::isfinite(cell.benchmark.lower) || !std::isfinite(cell.benchmark.upper) ||
            !(cell.benchmark.lower < cell.benchmark.upper))
            throw ConfigError("cell bounds must be finite with lower < upper");
    }
}

/// Execute every (cell, run_index) of the plan, classify each final global
/// attractor, and aggregate counts and precision per cell. Runs aborted by a
/// numeric failure are quarantined into report.failures and counted in the
/// cell's failed column. The report does not depend on execution order, so
/// jobs > 1 only changes wall time.
inline ExperimentReport run_plan(const ExperimentPlan& plan, int jobs = 1) {
    validate_plan(plan);

    struct Outcome {
        std::optional<RunRecord> record;
        std::string error;
    };
    std::vector<std::vector<Outcome>> outcomes;
    std::vector<std::pair<std::size_t, int>> tasks;
    outcomes.reserve(plan.cells.size());
    for (std::size_t c = 0; c < plan.cells.size(); ++c) {
        outcomes.emplace_back(static_cast<std::size_t>(plan.cells[c].n_runs));
        for (int r = 0; r < plan.cells[c].n_runs; ++r) tasks.emplace_back(c, r);
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const auto [c, r] = tasks[t];
            const PlanCell& cell = plan.cells[c];
            SwarmConfig config;
            config.a = plan.a;
            config.b_glob = plan.b_glob;
            config.b_loc = plan.b_loc;
            config.variant = cell.variant;
            config.n_particles = plan.n_particles;
            config.maxiter = plan.maxiter;
            config.seed = cell.base_seed + static_cast<std::uint64_t>(r);
            Outcome& slot = outcomes[c][static_cast<std::size_t>(r)];
            try {
                RunRecord record = run(config, schedule_for(cell.variant, plan.maxiter), cell.benchmark,
                                       cell.dimension, plan.trace_potential);
                record.classification = classify(record.p_glob, cell.benchmark, cell.dimension);
                slot.record = std::move(record);
            } catch (const std::exception& e) {
                slot.error = detail::describe_cell(cell) + " seed " + std::to_string(config.seed) + ": " +
                             e.what();
            }
        }
    };

    const std::size_t n_workers =
        std::min<std::size_t>(tasks.size(), static_cast<std::size_t>(jobs < 1 ? 1 : jobs));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    ExperimentReport report;
    for (std::size_t c = 0; c < plan.cells.size(); ++c) {
        const PlanCell& cell = plan.cells[c];
        CellSummary summary;
        summary.function = name(cell.benchmark.id);
        if (cell.benchmark.id == BenchmarkId::griewank) summary.mu = cell.benchmark.mu;
        summary.dimension = cell.dimension;
        summary.variant = cell.variant;
        summary.runs = cell.n_runs;
        std::vector<RunRecord> records;
        records.reserve(outcomes[c].size());
        for (Outcome& outcome : outcomes[c]) {
            if (outcome.record) {
                switch (*outcome.record->classification) {
                    case Classification::G: ++summary.g; break;
                    case Classification::L: ++summary.l; break;
                    case Classification::O: ++summary.o; break;
                }
                records.push_back(std::move(*outcome.record));
            } else {
                ++summary.failed;
                report.failures.push_back(outcome.error);
            }
        }
        summary.precision = precision(records, cell.benchmark, cell.dimension);
        report.cells.push_back(std::move(summary));

        report.metadata.bounds[name(cell.benchmark.id)] = {cell.benchmark.lower, cell.benchmark.upper};
    }
    report.metadata.generator = std::string(RandomStream::generator_id());
    report.metadata.a = plan.a;
    report.metadata.b_glob = plan.b_glob;
    report.metadata.b_loc = plan.b_loc;
    report.metadata.n_particles = plan.n_particles;
    report.metadata.maxiter = plan.maxiter;
    report.metadata.timestamp = detail::timestamp_utc_now();
    return report;
}

inline std::vector<double> default_sweep_mu_values() {
    return {1.0 / 4000.0, 1.0 / 2000.0, 1.0 / 1000.0, 1.0 / 500.0, 1.0 / 100.0, 1.0 / 10.0};
}

/// The Griewank mu sweep: one cell per (mu, variant) at the given dimension.
inline ExperimentReport griewank_sweep(std::span<const double> mu_values, int dimension,
                                       std::span<const Variant> variants, int n_runs,
                                       std::uint64_t base_seed, int jobs = 1) {
    ExperimentPlan plan;
    for (double mu : mu_values) {
        if (!(mu > 0.0)) throw ConfigError("sweep mu values must be positive");
        for (Variant variant : variants) {
            PlanCell cell;
            cell.benchmark = make_benchmark(BenchmarkId::griewank, mu);
            cell.dimension = dimension;
            cell.variant = variant;
            cell.n_runs = n_runs;
            cell.base_seed = base_seed;
            plan.cells.push_back(cell);
        }
    }
    return run_plan(plan, jobs);
}

/// Run each variant once with the same seed, tracing the swarm potential, and
/// write one `potential_<variant>.csv` per variant. Returns the file paths in
/// variant order.
inline std::vector<std::filesystem::path> potential_experiment(const Benchmark& bench, int dimension,
                                                               std::span<const Variant> variants,
                                                               std::uint64_t seed, int maxiter,
                                                               int n_particles,
                                                               const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> paths;
    for (Variant variant : variants) {
        SwarmConfig config;
        config.variant = variant;
        config.n_particles = n_particles;
        config.maxiter = maxiter;
        config.seed = seed;
        const RunRecord record = run(config, schedule_for(variant, maxiter), bench, dimension, true);

        const std::filesystem::path path = out_dir / ("potential_" + name(variant) + ".csv");
        std::ofstream out(path);
        if (!out) throw IoError("cannot open " + path.string() + " for writing");
        write_trace_csv(*record.trace, out);
        if (!out.good()) throw IoError("write failed for " + path.string());
        paths.push_back(path);
    }
    return paths;
}

// --- persistence ---------------------------------------------------------

enum class ReportFormat { csv, json };

inline void write_report_csv(const ExperimentReport& report, std::ostream& out) {
    out << "function,mu,dimension,variant,runs,G,L,O,precision,failed\n";
    for (const CellSummary& cell : report.cells) {
        out << cell.function << ',' << (cell.mu ? format_double(*cell.mu) : "") << ',' << cell.dimension
            << ',' << name(cell.variant) << ',' << cell.runs << ',' << cell.g << ',' << cell.l << ','
            << cell.o << ',' << (cell.precision ? format_double(*cell.precision) : "n/a") << ','
            << cell.failed << '\n';
    }
}

inline nlohmann::json to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["metadata"] = {
        {"generator", report.metadata.generator},
        {"a", report.metadata.a},
        {"b_glob", report.metadata.b_glob},
        {"b_loc", report.metadata.b_loc},
        {"n_particles", report.metadata.n_particles},
        {"maxiter", report.metadata.maxiter},
        {"timestamp", report.metadata.timestamp},
    };
    nlohmann::json bounds = nlohmann::json::object();
    for (const auto& [function, interval] : report.metadata.bounds) bounds[function] = interval;
    j["metadata"]["bounds"] = bounds;
    j["cells"] = nlohmann::json::array();
    for (const CellSummary& cell : report.cells) {
        nlohmann::json row = {
            {"function", cell.function},
            {"mu", cell.mu ? nlohmann::json(*cell.mu) : nlohmann::json(nullptr)},
            {"dimension", cell.dimension},
            {"variant", name(cell.variant)},
            {"runs", cell.runs},
            {"G", cell.g},
            {"L", cell.l},
            {"O", cell.o},
            {"precision", cell.precision ? nlohmann::json(*cell.precision) : nlohmann::json(nullptr)},
            {"failed", cell.failed},
        };
        j["cells"].push_back(std::move(row));
    }
    j["failures"] = report.failures;
    return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport report;
    const nlohmann::json& metadata = j.at("metadata");
    report.metadata.generator = metadata.at("generator").get<std::string>();
    report.metadata.a = metadata.at("a").get<double>();
    report.metadata.b_glob = metadata.at("b_glob").get<double>();
    report.metadata.b_loc = metadata.at("b_loc").get<double>();
    report.metadata.n_particles = metadata.at("n_particles").get<int>();
    report.metadata.maxiter = metadata.at("maxiter").get<int>();
    report.metadata.timestamp = metadata.at("timestamp").get<std::string>();
    for (const auto& [function, interval] : metadata.at("bounds").items())
        report.metadata.bounds[function] = interval.get<std::array<double, 2>>();
    for (const nlohmann::json& row : j.at("cells")) {
        CellSummary cell;
        cell.function = row.at("function").get<std::string>();
        if (!row.at("mu").is_null()) cell.mu = row.at("mu").get<double>();
        cell.dimension = row.at("dimension").get<int>();
        const std::string variant_name = row.at("variant").get<std::string>();
        const std::optional<Variant> variant = variant_from(variant_name);
        if (!variant) throw ConfigError("unknown variant '" + variant_name + "' in report");
        cell.variant = *variant;
        cell.runs = row.at("runs").get<int>();
        cell.g = row.at("G").get<int>();
        cell.l = row.at("L").get<int>();
        cell.o = row.at("O").get<int>();
        if (!row.at("precision").is_null()) cell.precision = row.at("precision").get<double>();
        cell.failed = row.at("failed").get<int>();
        report.cells.push_back(std::move(cell));
    }
    report.failures = j.at("failures").get<std::vector<std::string>>();
    return report;
}

inline void write_report(const ExperimentReport& report, ReportFormat format,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (format == ReportFormat::csv)
        write_report_csv(report, out);
    else
        out << to_json(report).dump(2) << '\n';
    if (!out.good()) throw IoError("write failed for " + path.string());
}

inline ExperimentReport read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    nlohmann::json j;
    try {
        in >> j;
        return report_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid report " + path.string() + ": " + e.what());
    }
}

// --- plan files -----------------------------------------------------------

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::span<const std::string_view> known,
                                const std::string& where) {
    for (const auto& item : j.items()) {
        bool found = false;
        for (std::string_view key : known)
            if (item.key() == key) found = true;
        if (!found) throw ConfigError("unknown field '" + item.key() + "' in " + where);
    }
}

} // namespace detail

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
    static constexpr std::array<std::string_view, 7> plan_keys = {
        "cells", "n_particles", "maxiter", "a", "b_glob", "b_loc", "trace_potential"};
    static constexpr std::array<std::string_view, 6> cell_keys = {"function", "mu",     "dimension",
                                                                  "variant",  "n_runs", "base_seed"};
    if (!j.is_object()) throw ConfigError("plan must be a JSON object");
    detail::reject_unknown_keys(j, plan_keys, "plan");

    ExperimentPlan plan;
    try {
        plan.n_particles = j.value("n_particles", plan.n_particles);
        plan.maxiter = j.value("maxiter", plan.maxiter);
        plan.a = j.value("a", plan.a);
        plan.b_glob = j.value("b_glob", plan.b_glob);
        plan.b_loc = j.value("b_loc", plan.b_loc);
        plan.trace_potential = j.value("trace_potential", plan.trace_potential);

        if (!j.contains("cells") || !j.at("cells").is_array())
            throw ConfigError("plan requires a 'cells' array");
        for (const nlohmann::json& row : j.at("cells")) {
            if (!row.is_object()) throw ConfigError("plan cell must be a JSON object");
            detail::reject_unknown_keys(row, cell_keys, "plan cell");
            PlanCell cell;
            const std::string function = row.at("function").get<std::string>();
            cell.benchmark = parse_benchmark(function);
            if (row.contains("mu")) {
                if (cell.benchmark.id != BenchmarkId::griewank)
                    throw ConfigError("mu is only meaningful with griewank: '" + function + "'");
                if (function.find(':') != std::string::npos)
                    throw ConfigError("mu given both inline and as a field for '" + function + "'");
                cell.benchmark = make_benchmark(BenchmarkId::griewank, row.at("mu").get<double>());
            }
            cell.dimension = row.at("dimension").get<int>();
            const std::string variant_name = row.at("variant").get<std::string>();
            const std::optional<Variant> variant = variant_from(variant_name);
            if (!variant) throw ConfigError("unknown variant '" + variant_name + "' in plan");
            cell.variant = *variant;
            cell.n_runs = row.value("n_runs", cell.n_runs);
            cell.base_seed = row.value("base_seed", cell.base_seed);
            plan.cells.push_back(std::move(cell));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid plan: ") + e.what());
    }
    validate_plan(plan);
    return plan;
}

inline ExperimentPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in plan " + path.string() + ": " + e.what());
    }
    return plan_from_json(j);
}

// --- bundled table presets --------------------------------------------------

namespace detail {

inline const std::array<BenchmarkId, 7>& table_function_order() {
    // row order of the comparison tables
    static const std::array<BenchmarkId, 7> order = {
        BenchmarkId::ackley,    BenchmarkId::griewank, BenchmarkId::elliptic, BenchmarkId::rastrigin,
        BenchmarkId::rosenbrock, BenchmarkId::schwefel, BenchmarkId::sphere,
    };
    return order;
}

inline ExperimentPlan table_plan(std::span<const Variant> variants, std::uint64_t base_seed) {
    ExperimentPlan plan;
    const auto add_cell = [&](BenchmarkId id, int dimension, Variant variant) {
        PlanCell cell;
        cell.benchmark = make_benchmark(id);
        cell.dimension = dimension;
        cell.variant = variant;
        cell.n_runs = 50;
        cell.base_seed = base_seed;
        plan.cells.push_back(cell);
    };
    for (BenchmarkId id : table_function_order())
        for (Variant variant : variants) add_cell(id, 3, variant);
    for (Variant variant : variants) add_cell(BenchmarkId::rastrigin, 4, variant);
    return plan;
}

} // namespace detail

/// Classical vs social-only over the seven functions at D=3 plus Rastrigin at
/// D=4: 16 cells, 800 runs.
inline ExperimentPlan preset_table1(std::uint64_t base_seed) {
    const std::array<Variant, 2> variants = {Variant::classical, Variant::social_only};
    return detail::table_plan(variants, base_seed);
}

/// The Griewank mu sweep at D=5 for classical and social-only: 12 cells.
inline ExperimentPlan preset_table2(std::uint64_t base_seed) {
    ExperimentPlan plan;
    for (double mu : default_sweep_mu_values()) {
        for (Variant variant : {Variant::classical, Variant::social_only}) {
            PlanCell cell;
            cell.benchmark = make_benchmark(BenchmarkId::griewank, mu);
            cell.dimension = 5;
            cell.variant = variant;
            cell.n_runs = 50;
            cell.base_seed = base_seed;
            plan.cells.push_back(cell);
        }
    }
    return plan;
}

/// Classical, hybrid and social-only on the table-1 functions; the classical
/// and social-only cells reuse the table-1 seeds, so their counts agree.
inline ExperimentPlan preset_table34(std::uint64_t base_seed) {
    const std::array<Variant, 3> variants = {Variant::classical, Variant::hybrid, Variant::social_only};
    return detail::table_plan(variants, base_seed);
}

inline std::optional<ExperimentPlan> preset_by_name(std::string_view preset, std::uint64_t base_seed) {
    if (preset == "table1") return preset_table1(base_seed);
    if (preset == "table2") return preset_table2(base_seed);
    if (preset == "table34") return preset_table34(base_seed);
    return std::nullopt;
}

} // namespace psolab
