#pragma once

#include "hxtwin/fluids.hpp"
#include "hxtwin/harness/telemetry.hpp"

#include <vector>

namespace hxtwin {

struct RatingPoint {
    double t = 0.0;
    double kA = kNaN;  // W/K, NaN when flagged
    bool flagged = false;
};

/// Model-free steady rating per record: |hot enthalpy rate| over the mean
/// temperature difference of the measured terminal temperatures (log mean,
/// arithmetic mean outside its domain). Records whose mean difference is not
/// positive are flagged.
std::vector<RatingPoint> model_free_rating(const std::vector<TelemetryRecord>& telemetry, const StreamConfig& hot);

}  // namespace hxtwin
