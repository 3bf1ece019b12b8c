#pragma once

#include "hxtwin/harness/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hxtwin {

struct BenchReport {
    std::size_t n_evals = 0;
    double ref_ns_per_call = 0.0;
    double approx_ns_per_call = 0.0;         // beta selection and closed form
    double approx_steady_ns_per_call = 0.0;  // the same plus the steady target
    double ratio = 0.0;                      // ref / approx
    bool low_confidence = false;  // fewer than 1e4 evaluations
    std::string hot_fluid;
};

/// Per-call wall-clock time of ref_output and of the approximate output on
/// identical randomized states around the scenario's first operating point.
/// The approximate call is beta selection plus the closed form; the steady
/// target depends on (u, theta) only, so a monitor computes it once per
/// sample and it is timed separately. Best of five interleaved passes.
BenchReport bench_models(const ScenarioConfig& cfg, std::size_t n_evals, std::uint64_t seed = 1);

void write_bench_report(std::ostream& out, const BenchReport& rep);

}  // namespace hxtwin
