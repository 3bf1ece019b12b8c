#include "hxtwin/harness/bench.hpp"

#include "hxtwin/approx_model.hpp"
#include "hxtwin/harness/rng.hpp"
#include "hxtwin/reference_model.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <chrono>
#include <ostream>
#include <vector>

namespace hxtwin {

namespace {

struct Sample {
    WallState x;
    InletConditions u;
    Conductances cond;
    ApproxSteady steady;
};

template <class Fn>
double ns_per_call(const std::vector<Sample>& s, Fn&& fn, double& sink) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& e : s) {
        OutletTemps y = fn(e);
        sink += y.T_h2 + y.T_c2;
    }
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::nano>(t1 - t0).count() / s.size();
}

}  // namespace

BenchReport bench_models(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed) {
    BenchReport rep;
    n = std::max<std::size_t>(n, 1);
    rep.n_evals = n;
    rep.low_confidence = n < 10000;
    rep.hot_fluid = cfg.streams.hot.fluid.description();

    const InletConditions u0 = cfg.inputs_at(0.0);
    const Conductances c0 = cfg.truth.at(0.0, u0);
    const WallState x0 = steady_wall_temps(ref_steady_outlets(u0, c0.kA(), cfg.streams), u0, c0);
    CpParams cp = seed_cp_params(cfg.streams, u0);
    refresh_steady_cp(cfg.streams, u0, c0.kA(), cp);

    GaussianRng rng(seed);
    auto uni = [&](double a, double b) { return a + (b - a) * rng.uniform(); };
    std::vector<Sample> samples(n);
    for (auto& s : samples) {
        s.u = {u0.T_h1 + uni(-3, 3), u0.T_c1 + uni(-3, 3), u0.mdot_h * uni(0.9, 1.1), u0.mdot_c * uni(0.9, 1.1)};
        s.cond = {c0.aA_h * uni(0.8, 1.2), c0.aA_c * uni(0.8, 1.2)};
        s.x = {x0.T_w1 + uni(-2, 2), x0.T_w2 + uni(-2, 2)};
        s.steady = approx_steady_state(s.u, s.cond, cp);
    }

    auto ref = [&](const Sample& s) { return ref_output(s.x, s.u, s.cond, cfg.streams).y; };
    auto approx = [&](const Sample& s) {
        BetaPair b = select_betas(s.x, s.u, s.cond, cp, s.steady);
        return approx_output(s.x, s.u, s.cond, cp, b);
    };
    auto approx_steady = [&](const Sample& s) { return approx_output(s.x, s.u, s.cond, cp); };

    // passes interleaved so that load changes hit all three timings alike
    double sink = 0.0;
    rep.ref_ns_per_call = rep.approx_ns_per_call = rep.approx_steady_ns_per_call = 1e300;
    for (int pass = 0; pass < 5; ++pass) {
        rep.ref_ns_per_call = std::min(rep.ref_ns_per_call, ns_per_call(samples, ref, sink));
        rep.approx_ns_per_call = std::min(rep.approx_ns_per_call, ns_per_call(samples, approx, sink));
        rep.approx_steady_ns_per_call =
            std::min(rep.approx_steady_ns_per_call, ns_per_call(samples, approx_steady, sink));
    }
    rep.ratio = rep.ref_ns_per_call / rep.approx_ns_per_call;
    volatile double keep = sink;  // keeps the timed calls observable
    (void)keep;
    return rep;
}

void write_bench_report(std::ostream& out, const BenchReport& r) {
    fmt::print(out,
               "hot fluid: {}\nevaluations: {}{}\nref_output: {:.1f} ns/call\napprox_output: {:.1f} ns/call\n"
               "approx_output with steady target: {:.1f} ns/call\nspeedup: {:.2f}x\n",
               r.hot_fluid, r.n_evals, r.low_confidence ? " (low confidence, < 1e4)" : "", r.ref_ns_per_call,
               r.approx_ns_per_call, r.approx_steady_ns_per_call, r.ratio);
}

}  // namespace hxtwin
