// Command-line front end: single runs, table reproductions, the Griewank mu
// sweep, and potential-trace experiments.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime/numeric error,
// 3 I/O error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "psolab/psolab.hpp"

namespace {

std::string function_help() {
    std::string text = "fitness function id (";
    for (std::size_t i = 0; i < psolab::all_benchmark_ids.size(); ++i)
        text += (i ? ", " : "") + psolab::name(psolab::all_benchmark_ids[i]);
    return text + ")";
}

std::string variant_help() {
    std::string text = "PSO variant (";
    for (std::size_t i = 0; i < psolab::all_variants.size(); ++i)
        text += (i ? ", " : "") + psolab::name(psolab::all_variants[i]);
    return text + ")";
}

std::string default_out_dir() {
    if (const char* dir = std::getenv("PSOLAB_OUT_DIR")) return dir;
    return "out";
}

psolab::Benchmark benchmark_from_flags(const std::string& function, const std::optional<double>& mu) {
    psolab::Benchmark bench = psolab::parse_benchmark(function);
    if (mu) {
        if (bench.id != psolab::BenchmarkId::griewank)
            throw psolab::ConfigError("--mu is only meaningful with griewank");
        if (function.find(':') != std::string::npos)
            throw psolab::ConfigError("--mu given both inline and as a flag");
        bench = psolab::make_benchmark(psolab::BenchmarkId::griewank, *mu);
    }
    return bench;
}

psolab::Variant variant_from_flag(const std::string& text) {
    const std::optional<psolab::Variant> variant = psolab::variant_from(text);
    if (!variant) throw psolab::ConfigError("unknown variant '" + text + "'");
    return *variant;
}

std::vector<psolab::Variant> variants_from_flag(const std::string& list) {
    std::vector<psolab::Variant> variants;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string item =
            list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        variants.push_back(variant_from_flag(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return variants;
}

void report_failures(const psolab::ExperimentReport& report) {
    if (report.failures.empty()) return;
    std::cerr << "WARNING: " << report.failures.size()
              << " run(s) aborted with numeric failures and were excluded from the counts:\n";
    for (const std::string& failure : report.failures) std::cerr << "  " << failure << '\n';
}

void write_reports(const psolab::ExperimentReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw psolab::IoError("cannot create directory " + out_dir.string() + ": " + ec.message());
    const std::filesystem::path csv = out_dir / "report.csv";
    const std::filesystem::path json = out_dir / "report.json";
    psolab::write_report(report, psolab::ReportFormat::csv, csv);
    psolab::write_report(report, psolab::ReportFormat::json, json);
    std::cout << "wrote " << csv.string() << '\n' << "wrote " << json.string() << '\n';
    report_failures(report);
}

void cmd_run(const std::string& function, const std::optional<double>& mu, int dim,
             const std::string& variant_name, int particles, int iters, std::uint64_t seed,
             bool trace_potential, const std::string& out) {
    const psolab::Benchmark bench = benchmark_from_flags(function, mu);
    const psolab::Variant variant = variant_from_flag(variant_name);
    if (!out.empty() && !trace_potential)
        throw psolab::ConfigError("--out requires --trace-potential");

    psolab::SwarmConfig config;
    config.variant = variant;
    config.n_particles = particles;
    config.maxiter = iters;
    config.seed = seed;
    const psolab::RunRecord record =
        psolab::run(config, psolab::schedule_for(variant, iters), bench, dim, trace_potential);
    const psolab::Classification classification = psolab::classify(record.p_glob, bench, dim);
    const psolab::Optimum opt = psolab::optimum(bench, dim);

    std::cout << "function: " << psolab::name(bench.id);
    if (bench.id == psolab::BenchmarkId::griewank) std::cout << " (mu=" << psolab::format_double(bench.mu) << ')';
    std::cout << '\n'
              << "variant: " << psolab::name(variant) << '\n'
              << "dimension: " << dim << '\n'
              << "seed: " << seed << '\n'
              << "evaluations: " << record.evaluations << '\n'
              << "final value: " << psolab::format_double(record.f_glob) << '\n'
              << "classification: " << psolab::label(classification) << '\n';
    for (int d = 0; d < dim; ++d)
        std::cout << "distance[" << d + 1
                  << "]: " << psolab::format_double(std::abs(record.p_glob[d] - opt.position[d])) << '\n';

    if (trace_potential) {
        const std::filesystem::path path = out.empty() ? "trace.csv" : out;
        std::ofstream stream(path);
        if (!stream) throw psolab::IoError("cannot open " + path.string() + " for writing");
        psolab::write_trace_csv(*record.trace, stream);
        if (!stream.good()) throw psolab::IoError("write failed for " + path.string());
        std::cout << "wrote " << path.string() << '\n';
    }
}

void cmd_experiment(const std::string& plan_path, const std::string& preset, std::uint64_t base_seed,
                    bool base_seed_given, const std::string& out_dir, int jobs) {
    if (plan_path.empty() == preset.empty())
        throw psolab::ConfigError("exactly one of --plan or --preset is required");
    psolab::ExperimentPlan plan;
    if (!plan_path.empty()) {
        if (base_seed_given)
            throw psolab::ConfigError("--base-seed is only meaningful with --preset; plan files carry their own seeds");
        plan = psolab::load_plan(plan_path);
    } else {
        const std::optional<psolab::ExperimentPlan> p = psolab::preset_by_name(preset, base_seed);
        if (!p) throw psolab::ConfigError("unknown preset '" + preset + "' (table1, table2, table34)");
        plan = *p;
    }
    write_reports(psolab::run_plan(plan, jobs), out_dir);
}

void cmd_sweep(const std::vector<double>& mu_values, int dim, const std::string& variants_flag, int runs,
               std::uint64_t base_seed, const std::string& out_dir, int jobs) {
    const std::vector<psolab::Variant> variants = variants_from_flag(variants_flag);
    const std::vector<double> mus = mu_values.empty() ? psolab::default_sweep_mu_values() : mu_values;
    write_reports(psolab::griewank_sweep(mus, dim, variants, runs, base_seed, jobs), out_dir);
}

void cmd_potential(const std::string& function, const std::optional<double>& mu, int dim,
                   const std::string& variants_flag, std::uint64_t seed, int iters, int particles,
                   const std::string& out_dir) {
    const psolab::Benchmark bench = benchmark_from_flags(function, mu);
    const std::vector<psolab::Variant> variants = variants_from_flag(variants_flag);
    const std::vector<std::filesystem::path> paths =
        psolab::potential_experiment(bench, dim, variants, seed, iters, particles, out_dir);
    for (const std::filesystem::path& path : paths) std::cout << "wrote " << path.string() << '\n';
}

void cmd_list_benchmarks() {
    for (psolab::BenchmarkId id : psolab::all_benchmark_ids) {
        const psolab::Benchmark bench = psolab::make_benchmark(id);
        std::cout << psolab::name(id) << ": bounds [" << psolab::format_double(bench.lower) << ", "
                  << psolab::format_double(bench.upper) << "], min dimension " << bench.min_dimension
                  << ", G threshold factor " << psolab::format_double(bench.g_threshold_factor);
        if (id == psolab::BenchmarkId::griewank)
            std::cout << ", default mu " << psolab::format_double(psolab::default_griewank_mu);
        std::cout << '\n';
    }
    std::cout << "variants: ";
    for (std::size_t i = 0; i < psolab::all_variants.size(); ++i)
        std::cout << (i ? ", " : "") << psolab::name(psolab::all_variants[i]);
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"psolab - particle swarm optimization laboratory"};
    app.require_subcommand(1);

    // run
    std::string run_function;
    std::optional<double> run_mu;
    int run_dim = 3;
    std::string run_variant = "classical";
    int run_particles = 100;
    int run_iters = 500;
    std::uint64_t run_seed = 1;
    bool run_trace = false;
    std::string run_out;
    CLI::App* run = app.add_subcommand("run", "Execute one seeded run and classify its result");
    run->add_option("--function", run_function, function_help())->required();
    run->add_option("--mu", run_mu, "griewank sphere-term weight (griewank only)");
    run->add_option("--dim", run_dim, "search-space dimension")->required();
    run->add_option("--variant", run_variant, variant_help());
    run->add_option("--particles", run_particles, "swarm size")->capture_default_str();
    run->add_option("--iters", run_iters, "iteration budget")->capture_default_str();
    run->add_option("--seed", run_seed, "random seed")->capture_default_str();
    run->add_flag("--trace-potential", run_trace, "record the per-iteration swarm potential");
    run->add_option("--out", run_out, "trace CSV path (default trace.csv)");
    run->callback([&] {
        cmd_run(run_function, run_mu, run_dim, run_variant, run_particles, run_iters, run_seed, run_trace,
                run_out);
    });

    // experiment
    std::string exp_plan;
    std::string exp_preset;
    std::uint64_t exp_base_seed = 10000;
    std::string exp_out_dir = default_out_dir();
    int exp_jobs = 1;
    CLI::App* experiment =
        app.add_subcommand("experiment", "Run an experiment plan and write CSV/JSON reports");
    experiment->add_option("--plan", exp_plan, "plan JSON file");
    experiment->add_option("--preset", exp_preset, "built-in plan (table1, table2, table34)");
    experiment->add_option("--base-seed", exp_base_seed, "base seed for preset cells")->capture_default_str();
    experiment->add_option("--out-dir", exp_out_dir, "output directory")->capture_default_str();
    experiment->add_option("--jobs", exp_jobs, "max concurrent runs")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    experiment->callback([&] {
        cmd_experiment(exp_plan, exp_preset, exp_base_seed, experiment->count("--base-seed") > 0,
                       exp_out_dir, exp_jobs);
    });

    // sweep
    std::vector<double> sweep_mu;
    int sweep_dim = 5;
    std::string sweep_variants = "classical,social-only";
    int sweep_runs = 50;
    std::uint64_t sweep_base_seed = 10000;
    std::string sweep_out_dir = default_out_dir();
    int sweep_jobs = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "Griewank mu sweep");
    sweep->add_option("--mu-values", sweep_mu,
                      "mu values (default 1/4000 1/2000 1/1000 1/500 1/100 1/10)");
    sweep->add_option("--dim", sweep_dim, "search-space dimension")->capture_default_str();
    sweep->add_option("--variants", sweep_variants, "comma-separated variant list")->capture_default_str();
    sweep->add_option("--runs", sweep_runs, "runs per cell")->capture_default_str();
    sweep->add_option("--base-seed", sweep_base_seed, "base seed for every cell")->capture_default_str();
    sweep->add_option("--out-dir", sweep_out_dir, "output directory")->capture_default_str();
    sweep->add_option("--jobs", sweep_jobs, "max concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->callback([&] {
        cmd_sweep(sweep_mu, sweep_dim, sweep_variants, sweep_runs, sweep_base_seed, sweep_out_dir,
                  sweep_jobs);
    });

    // potential
    std::string pot_function;
    std::optional<double> pot_mu;
    int pot_dim = 1;
    std::string pot_variants;
    std::uint64_t pot_seed = 1;
    int pot_iters = 500;
    int pot_particles = 100;
    std::string pot_out_dir = default_out_dir();
    CLI::App* potential =
        app.add_subcommand("potential", "Trace the swarm potential for several variants, same seed");
    potential->add_option("--function", pot_function, function_help())->required();
    potential->add_option("--mu", pot_mu, "griewank sphere-term weight (griewank only)");
    potential->add_option("--dim", pot_dim, "search-space dimension")->required();
    potential->add_option("--variants", pot_variants, "comma-separated variant list")->required();
    potential->add_option("--seed", pot_seed, "random seed shared by all variants")->capture_default_str();
    potential->add_option("--iters", pot_iters, "iteration budget")->capture_default_str();
    potential->add_option("--particles", pot_particles, "swarm size")->capture_default_str();
    potential->add_option("--out-dir", pot_out_dir, "output directory")->capture_default_str();
    potential->callback([&] {
        cmd_potential(pot_function, pot_mu, pot_dim, pot_variants, pot_seed, pot_iters, pot_particles,
                      pot_out_dir);
    });

    CLI::App* list = app.add_subcommand("list-benchmarks", "List supported functions and variants");
    list->callback([&] { cmd_list_benchmarks(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const psolab::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const psolab::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const psolab::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
