#pragma once

#include "hxtwin/errors.hpp"
#include "hxtwin/harness/config.hpp"
#include "hxtwin/harness/telemetry.hpp"

#include <vector>

namespace hxtwin {

/// Failure while producing or consuming a specific record.
class RecordError : public Error {
public:
    RecordError(std::size_t index, double t, const std::string& what);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Ground truth from the reference model. Inputs and truth conductances are
/// held constant over each sample interval; the wall state starts at the
/// reference steady state of the first record. Measured outlets carry seeded
/// Gaussian noise.
std::vector<TelemetryRecord> run_truth_sim(const ScenarioConfig& cfg);

}  // namespace hxtwin
