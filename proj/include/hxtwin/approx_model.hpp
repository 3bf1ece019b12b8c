#pragma once

#include "hxtwin/types.hpp"

namespace hxtwin {

/// Side-independent terms of the approximate output equation. The hot and
/// cold sides map onto these through hot_substitution/cold_substitution.
struct SideSubstitution {
    double dT_I = 0.0;   // K
    double dT_w = 0.0;   // K
    double C_p = 0.0;    // W/K, mass flow times mean specific heat
    double gamma = 0.0;  // -1 hot, +1 cold
    double aA = 0.0;     // W/K
};

enum class BetaBranch { betaLM, betaStar1, betaStar2, zero };

struct BetaSelection {
    double beta = 0.0;
    BetaBranch branch = BetaBranch::zero;
    bool feasible_set_empty = false;
};

/// Mean specific heats, J/(kg K): theta3/theta4 over the transient outlets,
/// theta5/theta6 over the steady outlets (hot/cold).
struct CpParams {
    double theta3 = 0.0;
    double theta4 = 0.0;
    double theta5 = 0.0;
    double theta6 = 0.0;
};

SideSubstitution hot_substitution(const WallState& x, const InletConditions& u, double aA_h, double theta3);
SideSubstitution cold_substitution(const WallState& x, const InletConditions& u, double aA_c, double theta4);

/// Universal residual gamma*C_p*(dT_I - dT_II + dT_w) - gamma*aA*WM(dT_I, dT_II).
double universal_residual(const SideSubstitution& s, double dT_II, double beta);

/// Closed-form root of the universal residual. Throws DomainError when
/// (dT_I, beta) is outside the feasible domain.
double g_closed_form(const SideSubstitution& s, double beta);

/// (AM - LM) / (AM - GM) of the steady differences; 2/3 (the analytic limit)
/// when they are nearly equal or outside the log-mean domain.
double beta_lm(double dT_Is, double dT_IIs);

/// Feasible beta interval (lo, hi] for a side. `empty` when no beta > 0 is
/// admissible. Also exposes the two quadratic roots.
struct BetaDomain {
    bool empty = true;
    double lo = 0.0;  // open at 0, closed otherwise
    double hi = 0.0;
    double beta_star1 = 0.0;
    double beta_star2 = 0.0;
    bool contains(double beta) const;
};
BetaDomain beta_domain(const SideSubstitution& s);

BetaSelection select_beta(const SideSubstitution& s, double steady_dT_Is, double steady_dT_IIs);

struct BetaPair {
    BetaSelection hot;
    BetaSelection cold;
};

/// Betas for the current state from the steady outlets and wall temperatures.
BetaPair select_betas(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                      const OutletTemps& steady, const WallState& steady_walls);

OutletTemps approx_output(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                          const BetaPair& betas);

/// One-step steady outlets with capacity rates m_h*theta5 and m_c*theta6.
OutletTemps approx_steady(const InletConditions& u, double kA, const CpParams& cp);

/// Mean specific heats from the previous transient and steady outlets.
CpParams update_cp_params(const Streams& streams, const OutletTemps& prev_outputs, const OutletTemps& prev_steady,
                          const InletConditions& u);

/// Point specific heats at the intake temperatures, for the first step.
CpParams seed_cp_params(const Streams& streams, const InletConditions& u);

/// Refreshes theta5/theta6 against approx_steady until the outlets move less
/// than 1e-4 K, at most 5 times. Returns the final steady outlets.
OutletTemps refresh_steady_cp(const Streams& streams, const InletConditions& u, double kA, CpParams& cp);

/// Approximate steady state and betas bundled for one (u, theta) pair.
struct ApproxSteady {
    OutletTemps outlets;
    WallState walls;
    double beta_lm_hot = 2.0 / 3.0;   // from the steady differences, reused by select_betas
    double beta_lm_cold = 2.0 / 3.0;
};
ApproxSteady approx_steady_state(const InletConditions& u, const Conductances& cond, const CpParams& cp);
/// Same selection as above with the cached steady weightings.
BetaPair select_betas(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                      const ApproxSteady& st);

/// Convenience: steady state, beta selection and outputs in one call.
OutletTemps approx_output(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp);

}  // namespace hxtwin
