#pragma once

#include "hxtwin/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

namespace hxtwin {

/// Bits of TelemetryRecord::flags.
enum TelemetryFlag : unsigned {
    kHotOutletFlagged = 1u,   // reference hot residual had no sign change
    kColdOutletFlagged = 2u,
};

struct TelemetryRecord {
    double t = 0.0;
    InletConditions u;
    double p_h = 0.0;
    double p_c = 0.0;
    OutletTemps y_true;
    OutletTemps y_meas;
    WallState x_true;
    Conductances cond_true;
    double kA_true = 0.0;
    unsigned flags = 0;
};

/// Bits of MonitorRecord::flags.
enum MonitorFlag : unsigned {
    kFloorActive = 1u,  // upsilon or coolant-flow floor applied
    kNoUpdate = 2u,     // first record, estimate is the initial guess
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MonitorRecord {
    double t = 0.0;
    WallState x_hat;
    double ups_h = 0.0;
    double ups_c = 0.0;
    double mdot_c = 0.0;  // estimate (B/C) or the value fed to the model (A)
    Conductances cond_hat;
    double kA_hat = 0.0;
    double innov_h2 = kNaN;  // K, y_meas - g(x_prior)
    double innov_c2 = kNaN;  // NaN when not measured (variant C)
    double eps_h2 = kNaN;    // K, y_true - g(x_prior)
    double eps_c2 = kNaN;
    unsigned flags = 0;
};

void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& recs);
void write_monitor_csv(std::ostream& out, const std::vector<MonitorRecord>& recs);
void write_telemetry_csv(const std::filesystem::path& p, const std::vector<TelemetryRecord>& recs);
void write_monitor_csv(const std::filesystem::path& p, const std::vector<MonitorRecord>& recs);

/// Column-name based readers; throw ParseError with the line number.
std::vector<TelemetryRecord> read_telemetry_csv(std::istream& in);
std::vector<MonitorRecord> read_monitor_csv(std::istream& in);
std::vector<TelemetryRecord> read_telemetry_csv(const std::filesystem::path& p);
std::vector<MonitorRecord> read_monitor_csv(const std::filesystem::path& p);

}  // namespace hxtwin
