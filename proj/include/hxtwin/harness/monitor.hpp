#pragma once

#include "hxtwin/ekf.hpp"
#include "hxtwin/harness/config.hpp"
#include "hxtwin/harness/telemetry.hpp"

#include <vector>

namespace hxtwin {

/// Initial augmented estimate: approximate steady walls for the first
/// record's inputs under the configured upsilon guesses.
Eigen::VectorXd initial_estimate(const TelemetryRecord& first, const ScenarioConfig& cfg);

/// Covariance health over a run, for auditing.
struct MonitorDiagnostics {
    double min_P_diag = 0.0;       // smallest diagonal entry of any prior or posterior P
    double max_P_asymmetry = 0.0;  // largest |P - P^T| entry after symmetrization
};

/// Streams the Joint-EKF over the telemetry, one predict/update per record
/// (no update at the first record). Prediction over [t_{k-1}, t_k] uses the
/// inputs of record k-1; the update uses those of record k. Mean specific
/// heats are refreshed per record, iterated up to cp_passes times at the
/// current prior. Throws RecordError.
std::vector<MonitorRecord> run_monitor(const std::vector<TelemetryRecord>& telemetry, const ScenarioConfig& cfg,
                                       MonitorDiagnostics* diag = nullptr);

}  // namespace hxtwin
