#pragma once

#include "hxtwin/harness/rating.hpp"
#include "hxtwin/harness/telemetry.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace hxtwin {

/// Closed time window [t0, t1] in s.
struct Window {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Consecutive windows of `width` covering [t0, t1].
std::vector<Window> tile_windows(double t0, double t1, double width);

struct ChannelStats {
    std::size_t n = 0;
    double mean = kNaN;
    double std = kNaN;
};

struct WindowMetrics {
    Window window;
    std::size_t n = 0;
    // relative kA error (estimate - truth) / truth
    double mean_rel_err = 0.0;
    double mean_abs_rel_err = 0.0;
    double max_abs_rel_err = 0.0;
    ChannelStats innov_h2;
    ChannelStats innov_c2;
    // model-free rating over the same window, unflagged points only
    std::optional<double> rating_max_abs_rel_err;
};

struct MetricsReport {
    std::vector<WindowMetrics> windows;
    std::optional<double> mdot_c_recovery_time;  // s after the event
    std::optional<double> runtime_s;
    std::optional<double> speedup;
};

struct MetricsOptions {
    std::optional<double> event_time;  // enables the coolant-flow recovery metric
    const std::vector<RatingPoint>* rating = nullptr;
};

/// Throws DimensionMismatch for misaligned sequences and WindowOutOfRange for
/// windows outside the data or without samples.
MetricsReport compute_metrics(const std::vector<TelemetryRecord>& truth, const std::vector<MonitorRecord>& monitor,
                              const std::vector<Window>& windows, const MetricsOptions& opts = {});

/// JSON rendering of the report.
void write_report(std::ostream& out, const MetricsReport& rep);

}  // namespace hxtwin
