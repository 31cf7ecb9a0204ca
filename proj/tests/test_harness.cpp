#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "psolab/harness.hpp"

#include "helpers.hpp"

using namespace psolab;

namespace {

ExperimentPlan small_plan() {
    ExperimentPlan plan;
    plan.n_particles = 10;
    plan.maxiter = 20;
    PlanCell cell;
    cell.benchmark = make_benchmark(BenchmarkId::sphere);
    cell.dimension = 2;
    cell.variant = Variant::classical;
    cell.n_runs = 3;
    cell.base_seed = 100;
    plan.cells.push_back(cell);
    cell.benchmark = make_benchmark(BenchmarkId::rastrigin);
    cell.variant = Variant::social_only;
    cell.base_seed = 200;
    plan.cells.push_back(cell);
    return plan;
}

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("psolab_test_" + stem);
}

} // namespace

TEST_CASE("run_plan aggregates counts per cell") {
    ExperimentPlan plan = small_plan();
    plan.cells[0].n_runs = 1;
    plan.cells.resize(1);
    const ExperimentReport report = run_plan(plan);
    REQUIRE(report.cells.size() == 1);
    const CellSummary& cell = report.cells[0];
    CHECK(cell.runs == 1);
    CHECK(cell.g + cell.l + cell.o + cell.failed == 1);
    CHECK(cell.function == "sphere");
    CHECK_FALSE(cell.mu.has_value());
    CHECK(report.metadata.generator == RandomStream::generator_id());
    CHECK(report.metadata.bounds.at("sphere") == std::array<double, 2>{-100.0, 100.0});
}

TEST_CASE("run_plan is deterministic and order independent") {
    const ExperimentPlan plan = small_plan();
    const ExperimentReport a = run_plan(plan);
    const ExperimentReport b = run_plan(plan, 4);
    CHECK(a.cells == b.cells);
    CHECK(a.failures == b.failures);

    ExperimentPlan reversed = plan;
    std::swap(reversed.cells[0], reversed.cells[1]);
    const ExperimentReport c = run_plan(reversed, 4);
    REQUIRE(c.cells.size() == 2);
    CHECK(c.cells[0] == a.cells[1]);
    CHECK(c.cells[1] == a.cells[0]);
}

TEST_CASE("seed discipline: single runs reproduce the plan's cells") {
    const ExperimentPlan plan = small_plan();
    const ExperimentReport report = run_plan(plan, 2);
    for (std::size_t c = 0; c < plan.cells.size(); ++c) {
        const PlanCell& cell = plan.cells[c];
        CellSummary rebuilt;
        std::vector<RunRecord> records;
        for (int r = 0; r < cell.n_runs; ++r) {
            SwarmConfig config;
            config.variant = cell.variant;
            config.n_particles = plan.n_particles;
            config.maxiter = plan.maxiter;
            config.seed = cell.base_seed + static_cast<std::uint64_t>(r);
            RunRecord record =
                run(config, schedule_for(cell.variant, plan.maxiter), cell.benchmark, cell.dimension);
            record.classification = classify(record.p_glob, cell.benchmark, cell.dimension);
            switch (*record.classification) {
                case Classification::G: ++rebuilt.g; break;
                case Classification::L: ++rebuilt.l; break;
                case Classification::O: ++rebuilt.o; break;
            }
            records.push_back(std::move(record));
        }
        CHECK(rebuilt.g == report.cells[c].g);
        CHECK(rebuilt.l == report.cells[c].l);
        CHECK(rebuilt.o == report.cells[c].o);
        const std::optional<double> p = precision(records, cell.benchmark, cell.dimension);
        CHECK(p == report.cells[c].precision);
    }
}

TEST_CASE("numeric failures are quarantined, not dropped silently") {
    ExperimentPlan plan;
    plan.n_particles = 4;
    plan.maxiter = 5;
    PlanCell cell;
    cell.benchmark = make_benchmark(BenchmarkId::sphere);
    cell.benchmark.lower = 1e200;  // fitness overflows at initialization
    cell.benchmark.upper = 2e200;
    cell.dimension = 2;
    cell.n_runs = 3;
    plan.cells.push_back(cell);

    const ExperimentReport report = run_plan(plan);
    const CellSummary& summary = report.cells[0];
    CHECK(summary.failed == 3);
    CHECK(summary.g + summary.l + summary.o + summary.failed == summary.runs);
    CHECK_FALSE(summary.precision.has_value());
    REQUIRE(report.failures.size() == 3);
    CHECK(report.failures[0].find("sphere") != std::string::npos);
    CHECK(report.failures[0].find("non-finite") != std::string::npos);
}

TEST_CASE("plan validation") {
    ExperimentPlan plan = small_plan();
    plan.cells[0].n_runs = 0;
    CHECK_THROWS_AS(run_plan(plan), ConfigError);

    plan = small_plan();
    plan.cells[0].dimension = 0;
    CHECK_THROWS_AS(run_plan(plan), ConfigError);

    plan = small_plan();
    plan.n_particles = 0;
    CHECK_THROWS_AS(run_plan(plan), ConfigError);

    plan = small_plan();
    plan.cells[0].benchmark = make_benchmark(BenchmarkId::rosenbrock);
    plan.cells[0].dimension = 1;
    CHECK_THROWS_AS(run_plan(plan), ConfigError);
}

TEST_CASE("report CSV layout") {
    SECTION("empty plan gives a header-only file") {
        ExperimentReport report;
        std::ostringstream out;
        write_report_csv(report, out);
        CHECK(out.str() == "function,mu,dimension,variant,runs,G,L,O,precision,failed\n");
    }

    SECTION("rows carry counts, precision and failures") {
        ExperimentReport report;
        CellSummary cell;
        cell.function = "griewank";
        cell.mu = 0.00025;
        cell.dimension = 5;
        cell.variant = Variant::social_only;
        cell.runs = 50;
        cell.g = 2;
        cell.l = 48;
        cell.precision = 0.0;
        report.cells.push_back(cell);
        cell = CellSummary{};
        cell.function = "rastrigin";
        cell.dimension = 3;
        cell.variant = Variant::classical;
        cell.runs = 50;
        cell.o = 50;
        report.cells.push_back(cell);

        std::ostringstream out;
        write_report_csv(report, out);
        CHECK(out.str() ==
              "function,mu,dimension,variant,runs,G,L,O,precision,failed\n"
              "griewank,0.00025,5,social-only,50,2,48,0,0,0\n"
              "rastrigin,,3,classical,50,0,0,50,n/a,0\n");
    }
}

TEST_CASE("report JSON round-trip") {
    const ExperimentReport report = run_plan(small_plan());
    const std::filesystem::path path = temp_file("report.json");
    write_report(report, ReportFormat::json, path);
    const ExperimentReport reread = read_report_json(path);
    CHECK(reread == report);
    std::filesystem::remove(path);
}

TEST_CASE("write_report surfaces I/O failures with path context") {
    const ExperimentReport report;
    try {
        write_report(report, ReportFormat::csv, "/nonexistent-dir-psolab/report.csv");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent-dir-psolab/report.csv") != std::string::npos);
    }
}

TEST_CASE("plan files") {
    SECTION("a valid plan loads") {
        const std::filesystem::path path = temp_file("plan.json");
        std::ofstream(path) << R"({
            "n_particles": 10,
            "maxiter": 20,
            "cells": [
                {"function": "sphere", "dimension": 2, "variant": "classical", "n_runs": 3, "base_seed": 9},
                {"function": "griewank:mu=0.01", "dimension": 5, "variant": "hybrid"},
                {"function": "griewank", "mu": 0.1, "dimension": 2, "variant": "social-only"}
            ]
        })";
        const ExperimentPlan plan = load_plan(path);
        REQUIRE(plan.cells.size() == 3);
        CHECK(plan.n_particles == 10);
        CHECK(plan.maxiter == 20);
        CHECK(plan.cells[0].benchmark.id == BenchmarkId::sphere);
        CHECK(plan.cells[0].n_runs == 3);
        CHECK(plan.cells[0].base_seed == 9);
        CHECK(plan.cells[1].benchmark.mu == 0.01);
        CHECK(plan.cells[1].variant == Variant::hybrid);
        CHECK(plan.cells[2].benchmark.mu == 0.1);
        CHECK(plan.cells[2].n_runs == 50);  // default
        std::filesystem::remove(path);
    }

    SECTION("unknown fields are rejected") {
        CHECK_THROWS_WITH(plan_from_json(nlohmann::json::parse(R"({"cells": [], "particles": 4})")),
                          Catch::Matchers::ContainsSubstring("particles"));
        CHECK_THROWS_WITH(
            plan_from_json(nlohmann::json::parse(
                R"({"cells": [{"function": "sphere", "dimension": 2, "variant": "classical", "seeds": 1}]})")),
            Catch::Matchers::ContainsSubstring("seeds"));
    }

    SECTION("malformed plans are rejected") {
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"maxiter": 5})")), ConfigError);
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(R"({"cells": [], "n_particles": "ten"})")),
                        ConfigError);
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(
                            R"({"cells": [{"function": "sphere", "dimension": "two", "variant": "classical"}]})")),
                        ConfigError);
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(
                            R"({"cells": [{"function": "sphere", "dimension": 2, "variant": "bogus"}]})")),
                        ConfigError);
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(
                            R"({"cells": [{"function": "sphere", "mu": 1.0, "dimension": 2, "variant": "classical"}]})")),
                        ConfigError);
        CHECK_THROWS_AS(plan_from_json(nlohmann::json::parse(
                            R"({"cells": [{"function": "griewank:mu=0.5", "mu": 1.0, "dimension": 2, "variant": "classical"}]})")),
                        ConfigError);
    }

    SECTION("a missing plan file is an I/O error naming the path") {
        try {
            load_plan("missing_psolab_plan.json");
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find("missing_psolab_plan.json") != std::string::npos);
        }
    }
}

TEST_CASE("preset plan layout") {
    const ExperimentPlan table1 = preset_table1(1000);
    CHECK(table1.cells.size() == 16);
    int total_runs = 0;
    for (const PlanCell& cell : table1.cells) {
        total_runs += cell.n_runs;
        CHECK(cell.n_runs == 50);
        CHECK(cell.base_seed == 1000);
    }
    CHECK(total_runs == 800);
    CHECK(table1.n_particles == 100);
    CHECK(table1.maxiter == 500);
    // the two extra cells are 4-dimensional rastrigin
    CHECK(table1.cells[14].benchmark.id == BenchmarkId::rastrigin);
    CHECK(table1.cells[14].dimension == 4);
    CHECK(table1.cells[15].dimension == 4);

    const ExperimentPlan table2 = preset_table2(1000);
    CHECK(table2.cells.size() == 12);
    for (const PlanCell& cell : table2.cells) {
        CHECK(cell.benchmark.id == BenchmarkId::griewank);
        CHECK(cell.dimension == 5);
    }

    const ExperimentPlan table34 = preset_table34(1000);
    CHECK(table34.cells.size() == 24);

    CHECK(preset_by_name("table1", 7)->cells.size() == 16);
    CHECK_FALSE(preset_by_name("table9", 7).has_value());
}

TEST_CASE("griewank sweep layout") {
    CHECK(default_sweep_mu_values() ==
          std::vector<double>{1.0 / 4000.0, 1.0 / 2000.0, 1.0 / 1000.0, 1.0 / 500.0, 1.0 / 100.0,
                              1.0 / 10.0});

    const std::vector<double> mus = {0.01, 0.1};
    const std::vector<Variant> variants = {Variant::classical, Variant::social_only};
    // tiny configuration, structure only
    ExperimentPlan probe;
    probe.n_particles = 5;
    probe.maxiter = 5;
    for (double mu : mus)
        for (Variant variant : variants) {
            PlanCell cell;
            cell.benchmark = make_benchmark(BenchmarkId::griewank, mu);
            cell.dimension = 2;
            cell.variant = variant;
            cell.n_runs = 2;
            probe.cells.push_back(cell);
        }
    const ExperimentReport report = run_plan(probe);
    REQUIRE(report.cells.size() == 4);
    CHECK(report.cells[0].mu == 0.01);
    CHECK(report.cells[0].variant == Variant::classical);
    CHECK(report.cells[1].variant == Variant::social_only);
    CHECK(report.cells[3].mu == 0.1);

    CHECK_THROWS_AS(griewank_sweep(std::vector<double>{-0.5}, 2, variants, 1, 0), ConfigError);
}

TEST_CASE("potential experiment writes one trace per variant") {
    const std::filesystem::path dir = temp_file("traces");
    std::filesystem::remove_all(dir);
    const Benchmark bench = make_benchmark(BenchmarkId::rastrigin);

    SECTION("one file per variant, maxiter rows each") {
        const std::vector<Variant> variants = {Variant::classical, Variant::social_only};
        const auto paths = potential_experiment(bench, 1, variants, 3, 5, 10, dir);
        REQUIRE(paths.size() == 2);
        CHECK(paths[0].filename() == "potential_classical.csv");
        CHECK(paths[1].filename() == "potential_social-only.csv");
        for (const auto& path : paths) {
            std::ifstream in(path);
            REQUIRE(in.good());
            std::string line;
            int rows = 0;
            std::getline(in, line);
            CHECK(line == "iteration,dim,phi");
            while (std::getline(in, line)) ++rows;
            CHECK(rows == 5);  // D = 1
        }
    }

    SECTION("classical and hybrid agree up to the switch") {
        const std::vector<Variant> variants = {Variant::classical, Variant::hybrid};
        const auto paths = potential_experiment(bench, 2, variants, 8, 6, 10, dir);
        std::ifstream a(paths[0]);
        std::ifstream b(paths[1]);
        std::string line_a;
        std::string line_b;
        for (int row = 0; row <= 6; ++row) {  // header + iterations 1..3, both dims
            std::getline(a, line_a);
            std::getline(b, line_b);
            CHECK(line_a == line_b);
        }
    }

    SECTION("degenerate budget: traces of length one") {
        const std::vector<Variant> variants = {Variant::classical, Variant::hybrid};
        const auto paths = potential_experiment(bench, 1, variants, 8, 1, 10, dir);
        for (const auto& path : paths) {
            std::ifstream in(path);
            std::string line;
            int rows = -1;  // header
            while (std::getline(in, line)) ++rows;
            CHECK(rows == 1);
        }
    }
    std::filesystem::remove_all(dir);
}
