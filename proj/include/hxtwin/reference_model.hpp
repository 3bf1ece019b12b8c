#pragma once

#include "hxtwin/root_find.hpp"
#include "hxtwin/types.hpp"

#include <string>
#include <vector>

namespace hxtwin {

/// Outlet temperatures of the iterative reference model. A side is flagged
/// when its residual has no sign change over the physical bracket (strong
/// transient reversal); the bracket endpoint with the smaller residual is
/// returned for that side.
struct RefOutput {
    OutletTemps y;
    bool hot_flagged = false;
    bool cold_flagged = false;
    double hot_residual = 0.0;   // W
    double cold_residual = 0.0;  // W
};

// Residual functions; each is strictly increasing in the unknown outlet
// temperature on the open physical bracket.
double hot_residual(double T_h2, const WallState& x, const InletConditions& u, double aA_h, const StreamConfig& hot);
double cold_residual(double T_c2, const WallState& x, const InletConditions& u, double aA_c, const StreamConfig& cold);

/// Enthalpy rates of both streams, W (negative = fluid is cooled).
double hot_enthalpy_rate(double T_h2, const InletConditions& u, const StreamConfig& hot);
double cold_enthalpy_rate(double T_c2, const InletConditions& u, const StreamConfig& cold);

/// Quasi-steady outlets for frozen wall temperatures. Throws BracketError
/// when T_w2 > T_h1 or T_c1 > T_w1.
RefOutput ref_output(const WallState& x, const InletConditions& u, const Conductances& cond, const Streams& streams,
                     const RootOptions& opts = {});

/// Steady outlets from the coupled balance, solved as an outer bracket on the
/// cold outlet with the paired hot outlet from the enthalpy balance.
OutletTemps ref_steady_outlets(const InletConditions& u, double kA, const Streams& streams,
                               const RootOptions& opts = {});

/// Closed-form steady wall temperatures.
WallState steady_wall_temps(const OutletTemps& steady, const InletConditions& u, const Conductances& cond);

// Steady residuals; s1/s2 in the outlet unknowns, s3/s4 in the wall unknowns.
double steady_residual_s1(double T_h2s, double T_c2s, const InletConditions& u, const Streams& streams);
double steady_residual_s2(double T_h2s, double T_c2s, const InletConditions& u, double kA, const Streams& streams);
double steady_residual_s3(const WallState& w, const OutletTemps& steady, const InletConditions& u,
                          const Conductances& cond);
double steady_residual_s4(const WallState& w, const OutletTemps& steady, const InletConditions& u,
                          const Conductances& cond);

struct UniquenessReport {
    bool degenerate = false;  // T_h1 == T_c1, trivial fixed point
    int sign_changes = 0;     // of the outer steady residual over the scan
    bool hot_residual_increasing = false;
    bool cold_residual_increasing = false;
    double residual_s3 = 0.0;  // W, at the closed-form wall temperatures
    double residual_s4 = 0.0;
    double energy_imbalance = 0.0;  // |H_h + H_c|, W
    OutletTemps steady;
    WallState walls;
    bool passed = false;
    std::vector<std::string> notes;
};

/// Numerical check of the uniqueness arguments for one operating point.
/// grid_n >= 100 samples per scan.
UniquenessReport verify_uniqueness(const InletConditions& u, const Conductances& cond, const Streams& streams,
                                   int grid_n = 200);

}  // namespace hxtwin
