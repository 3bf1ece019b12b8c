#include "hxtwin/errors.hpp"
#include "hxtwin/harness/bench.hpp"
#include "hxtwin/harness/co2_table.hpp"
#include "hxtwin/harness/config.hpp"
#include "hxtwin/harness/metrics.hpp"
#include "hxtwin/harness/monitor.hpp"
#include "hxtwin/harness/rating.hpp"
#include "hxtwin/harness/simulate.hpp"
#include "hxtwin/reference_model.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

using namespace hxtwin;

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> variant;
};

ScenarioConfig load(const std::string& path, const Overrides& o) {
    ScenarioConfig cfg = load_config(path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.variant) cfg.ekf.variant = parse_variant(*o.variant);
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counterflow heat exchanger digital twin: truth simulation, Joint-EKF monitoring, rating"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides ov;
    app.add_option("--seed", ov.seed, "Override the scenario RNG seed");
    app.add_option("--variant", ov.variant, "Override the filter variant (A, B or C)");

    std::string config, telemetry, truth_csv, monitor_csv, output;

    auto* sim = app.add_subcommand("simulate", "Run the reference-model truth simulation");
    sim->add_option("config", config, "Scenario config")->required()->check(CLI::ExistingFile);
    sim->add_option("-o,--output", output, "Telemetry CSV")->required();

    auto* mon = app.add_subcommand("monitor", "Run the Joint-EKF over telemetry");
    mon->add_option("telemetry", telemetry, "Telemetry CSV")->required()->check(CLI::ExistingFile);
    mon->add_option("config", config, "Scenario config")->required()->check(CLI::ExistingFile);
    mon->add_option("-o,--output", output, "Monitor CSV")->required();

    double window = 300.0, settle = 300.0;
    std::optional<double> event;
    auto* cmp = app.add_subcommand("compare", "Tracking and innovation metrics of a monitor run");
    cmp->add_option("truth", truth_csv, "Telemetry CSV")->required()->check(CLI::ExistingFile);
    cmp->add_option("monitor", monitor_csv, "Monitor CSV")->required()->check(CLI::ExistingFile);
    cmp->add_option("-o,--output", output, "JSON report")->required();
    cmp->add_option("--config", config, "Scenario config; enables the model-free rating columns")
        ->check(CLI::ExistingFile);
    cmp->add_option("--window", window, "Window width in s")->check(CLI::PositiveNumber);
    cmp->add_option("--settle", settle, "Settling time excluded from the windows, s")->check(CLI::NonNegativeNumber);
    cmp->add_option("--event", event, "Event time for the coolant-flow recovery metric, s");

    std::size_t n_evals = 10000;
    auto* bench = app.add_subcommand("bench", "Time reference vs approximate output evaluation");
    bench->add_option("config", config, "Scenario config")->required()->check(CLI::ExistingFile);
    bench->add_option("-n,--evals", n_evals, "Evaluations per model");

    int grid = 200;
    auto* uniq = app.add_subcommand("verify-uniqueness", "Numerical uniqueness checks at the first operating point");
    uniq->add_option("config", config, "Scenario config")->required()->check(CLI::ExistingFile);
    uniq->add_option("--grid", grid, "Scan points (>= 100)")->check(CLI::Range(100, 1000000));

    auto* table = app.add_subcommand("make-co2-table", "Write the synthetic CO2-like enthalpy table");
    table->add_option("-o,--output", output, "Fluid table file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            ScenarioConfig cfg = load(config, ov);
            auto recs = run_truth_sim(cfg);
            write_telemetry_csv(std::filesystem::path(output), recs);
        } else if (*mon) {
            ScenarioConfig cfg = load(config, ov);
            auto tel = read_telemetry_csv(std::filesystem::path(telemetry));
            auto t0 = std::chrono::steady_clock::now();
            MonitorDiagnostics diag;
            auto recs = run_monitor(tel, cfg, &diag);
            auto t1 = std::chrono::steady_clock::now();
            write_monitor_csv(std::filesystem::path(output), recs);
            std::cerr << fmt::format("monitor: {} records, variant {}, {:.2f} s, min P diagonal {:.3g}\n",
                                     recs.size(), to_string(cfg.ekf.variant),
                                     std::chrono::duration<double>(t1 - t0).count(), diag.min_P_diag);
        } else if (*cmp) {
            auto tel = read_telemetry_csv(std::filesystem::path(truth_csv));
            auto mrec = read_monitor_csv(std::filesystem::path(monitor_csv));
            if (tel.empty()) throw Error("telemetry is empty");
            std::vector<RatingPoint> rating;
            MetricsOptions opts;
            opts.event_time = event;
            if (!config.empty()) {
                ScenarioConfig cfg = load(config, ov);
                rating = model_free_rating(tel, cfg.streams.hot);
                opts.rating = &rating;
            }
            double a = tel.front().t + settle, b = tel.back().t;
            std::vector<Window> ws = b - a >= window ? tile_windows(a, b, window) : std::vector<Window>{};
            MetricsReport rep = compute_metrics(tel, mrec, ws, opts);
            auto out = open_out(output);
            write_report(out, rep);
        } else if (*bench) {
            ScenarioConfig cfg = load(config, ov);
            write_bench_report(std::cout, bench_models(cfg, n_evals, cfg.seed));
        } else if (*uniq) {
            ScenarioConfig cfg = load(config, ov);
            InletConditions u = cfg.inputs_at(0.0);
            UniquenessReport rep = verify_uniqueness(u, cfg.truth.at(0.0, u), cfg.streams, grid);
            std::cout << fmt::format(
                "steady outlets: T_h2s = {:.6f} K, T_c2s = {:.6f} K\n"
                "steady walls:   T_w1s = {:.6f} K, T_w2s = {:.6f} K\n"
                "sign changes: {}\nhot residual increasing: {}\ncold residual increasing: {}\n"
                "R_s3 = {:.3e} W, R_s4 = {:.3e} W\nenergy imbalance = {:.3e} W\n",
                rep.steady.T_h2, rep.steady.T_c2, rep.walls.T_w1, rep.walls.T_w2, rep.sign_changes,
                rep.hot_residual_increasing, rep.cold_residual_increasing, rep.residual_s3, rep.residual_s4,
                rep.energy_imbalance);
            for (const auto& n : rep.notes) std::cout << "note: " << n << '\n';
            std::cout << (rep.passed ? "PASS" : "FAIL") << '\n';
            return rep.passed ? 0 : 2;
        } else if (*table) {
            auto out = open_out(output);
            write_fluid_table(out, make_co2_like_table());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
