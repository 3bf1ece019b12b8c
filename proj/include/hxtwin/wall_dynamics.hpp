#pragma once

#include "hxtwin/approx_model.hpp"
#include "hxtwin/root_find.hpp"
#include "hxtwin/types.hpp"

#include <functional>

namespace hxtwin {

struct WallDynamicsConfig {
    double theta7 = 566.5e3;          // J/K, total wall heat capacity
    double sector_v_epsilon = 1e-9;   // K
    double tdw_lower_bound = 1e-6;    // K/s
    int substeps_per_sample = 10;
};

/// Throws ConfigError on invalid values.
void validate(const WallDynamicsConfig& cfg);

enum class Sector { I, II, III, IV, V };

const char* to_string(Sector s);

/// Sector of the error e = xs - x. A zero component takes the sign of the
/// other one, so axis points belong to I or III.
Sector classify_sector(double e1, double e2, const WallDynamicsConfig& cfg);

struct WallRate {
    double dT_w1 = 0.0;  // K/s
    double dT_w2 = 0.0;
};

/// Lumped wall balance theta7 * dTw = -Qh - Qc distributed along xs - x.
WallRate wall_rhs(const WallState& x, const WallState& xs, double Qh, double Qc, const WallDynamicsConfig& cfg);

/// Fluid-side heat rates in the sign convention of the wall balance:
/// Qh = -Q(hot), Qc = +Q(cold).
double hot_wall_flux(const WallState& x, const InletConditions& u, double T_h2, double aA_h);
double cold_wall_flux(const WallState& x, const InletConditions& u, double T_c2, double aA_c);

/// Everything the wall ODE needs at one state: target and heat rates.
struct StageEval {
    WallState xs;
    double Qh = 0.0;
    double Qc = 0.0;
};
using StageModel = std::function<StageEval(const WallState&)>;

enum class OutputModel { reference, approximate };

/// Inputs and parameters frozen over one sample interval.
struct ModelInputs {
    InletConditions u;
    Conductances cond;
    CpParams cp;                       // approximate model only
    const Streams* streams = nullptr;  // reference model only
};

/// Builds the stage evaluator. The steady target depends on (u, theta) only
/// and is computed once per interval.
StageModel make_stage_model(const ModelInputs& in, OutputModel model, const RootOptions& opts = {});

/// Wall ODE right-hand side for a stage evaluator.
WallRate wall_rhs(const WallState& x, const StageModel& model, const WallDynamicsConfig& cfg);

/// Classical RK4 over dt with cfg.substeps_per_sample equal sub-intervals,
/// each halved while its first stage would overshoot half the distance to xs.
WallState integrate_step(const WallState& x, double dt, const StageModel& model, const WallDynamicsConfig& cfg);
WallState integrate_step(const WallState& x, const ModelInputs& in, double dt, OutputModel model,
                         const WallDynamicsConfig& cfg);

}  // namespace hxtwin
