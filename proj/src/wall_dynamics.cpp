#include "hxtwin/wall_dynamics.hpp"

#include "hxtwin/errors.hpp"
#include "hxtwin/means.hpp"
#include "hxtwin/reference_model.hpp"

#include <algorithm>
#include <cmath>

namespace hxtwin {

void validate(const WallDynamicsConfig& cfg) {
    if (!(cfg.theta7 > 0.0)) throw ConfigError("theta7 must be positive");
    if (!(cfg.sector_v_epsilon > 0.0)) throw ConfigError("sector V half-width must be positive");
    if (!(cfg.tdw_lower_bound >= 0.0)) throw ConfigError("wall rate lower bound must be non-negative");
    if (cfg.substeps_per_sample < 1) throw ConfigError("substeps per sample must be >= 1");
}

const char* to_string(Sector s) {
    switch (s) {
        case Sector::I: return "I";
        case Sector::II: return "II";
        case Sector::III: return "III";
        case Sector::IV: return "IV";
        case Sector::V: return "V";
    }
    return "?";
}

Sector classify_sector(double e1, double e2, const WallDynamicsConfig& cfg) {
    if (std::max(std::abs(e1), std::abs(e2)) < cfg.sector_v_epsilon) return Sector::V;
    int s1 = (e1 > 0.0) - (e1 < 0.0);
    int s2 = (e2 > 0.0) - (e2 < 0.0);
    if (s1 == 0) s1 = s2;
    if (s2 == 0) s2 = s1;
    if (s1 > 0 && s2 > 0) return Sector::I;
    if (s1 < 0 && s2 < 0) return Sector::III;
    return s1 < 0 ? Sector::II : Sector::IV;
}

WallRate wall_rhs(const WallState& x, const WallState& xs, double Qh, double Qc, const WallDynamicsConfig& cfg) {
    double e1 = xs.T_w1 - x.T_w1;
    double e2 = xs.T_w2 - x.T_w2;
    double dTw = (-Qh - Qc) / cfg.theta7;
    double a = 0.0;
    switch (classify_sector(e1, e2, cfg)) {
        case Sector::I:
        case Sector::III: a = 2.0 * dTw / (e1 + e2); break;
        case Sector::II:
        case Sector::IV: a = 2.0 * std::max(std::abs(dTw), cfg.tdw_lower_bound) / std::hypot(e1, e2); break;
        case Sector::V: a = 0.0; break;
    }
    return {a * e1, a * e2};
}

double hot_wall_flux(const WallState& x, const InletConditions& u, double T_h2, double aA_h) {
    return -heat_rate(u.T_h1 - x.T_w1, T_h2 - x.T_w2, aA_h);
}

double cold_wall_flux(const WallState& x, const InletConditions& u, double T_c2, double aA_c) {
    return heat_rate(x.T_w1 - T_c2, x.T_w2 - u.T_c1, aA_c);
}

StageModel make_stage_model(const ModelInputs& in, OutputModel model, const RootOptions& opts) {
    if (model == OutputModel::reference) {
        if (!in.streams) throw ConfigError("reference model needs stream definitions");
        WallState xs = steady_wall_temps(ref_steady_outlets(in.u, in.cond.kA(), *in.streams, opts), in.u, in.cond);
        return [in, xs, opts](const WallState& x) {
            OutletTemps y = ref_output(x, in.u, in.cond, *in.streams, opts).y;
            return StageEval{xs, hot_wall_flux(x, in.u, y.T_h2, in.cond.aA_h),
                             cold_wall_flux(x, in.u, y.T_c2, in.cond.aA_c)};
        };
    }
    ApproxSteady st = approx_steady_state(in.u, in.cond, in.cp);
    return [in, st](const WallState& x) {
        BetaPair b = select_betas(x, in.u, in.cond, in.cp, st);
        OutletTemps y = approx_output(x, in.u, in.cond, in.cp, b);
        return StageEval{st.walls, hot_wall_flux(x, in.u, y.T_h2, in.cond.aA_h),
                         cold_wall_flux(x, in.u, y.T_c2, in.cond.aA_c)};
    };
}

WallRate wall_rhs(const WallState& x, const StageModel& model, const WallDynamicsConfig& cfg) {
    StageEval s = model(x);
    return wall_rhs(x, s.xs, s.Qh, s.Qc, cfg);
}

namespace {

WallState shifted(const WallState& base, const WallRate& k, double s) {
    return WallState{base.T_w1 + s * k.dT_w1, base.T_w2 + s * k.dT_w2};
}

// One RK4 step, halved recursively while the first stage would carry the
// state more than half way to the target. Only stiff, high-NTU states near
// a vanishing terminal difference trigger this; there the fixed step
// overshoots and the sector switch can pin the map off equilibrium.
WallState rk4_guarded(const WallState& x, double h, const StageModel& model, const WallDynamicsConfig& cfg,
                      int depth) {
    StageEval s = model(x);
    WallRate k1 = wall_rhs(x, s.xs, s.Qh, s.Qc, cfg);
    double dist = std::hypot(s.xs.T_w1 - x.T_w1, s.xs.T_w2 - x.T_w2);
    double move = h * std::hypot(k1.dT_w1, k1.dT_w2);
    if (depth < 40 && dist > cfg.sector_v_epsilon && move > 0.5 * dist) {
        WallState mid = rk4_guarded(x, 0.5 * h, model, cfg, depth + 1);
        return rk4_guarded(mid, 0.5 * h, model, cfg, depth + 1);
    }
    WallRate k2 = wall_rhs(shifted(x, k1, 0.5 * h), model, cfg);
    WallRate k3 = wall_rhs(shifted(x, k2, 0.5 * h), model, cfg);
    WallRate k4 = wall_rhs(shifted(x, k3, h), model, cfg);
    return {x.T_w1 + h / 6.0 * (k1.dT_w1 + 2.0 * k2.dT_w1 + 2.0 * k3.dT_w1 + k4.dT_w1),
            x.T_w2 + h / 6.0 * (k1.dT_w2 + 2.0 * k2.dT_w2 + 2.0 * k3.dT_w2 + k4.dT_w2)};
}

}  // namespace

WallState integrate_step(const WallState& x0, double dt, const StageModel& model, const WallDynamicsConfig& cfg) {
    if (!(dt > 0.0)) throw DomainError("integration step must be positive");
    const int n = std::max(cfg.substeps_per_sample, 1);
    const double h = dt / n;
    WallState x = x0;
    for (int i = 0; i < n; ++i) x = rk4_guarded(x, h, model, cfg, 0);
    return x;
}

WallState integrate_step(const WallState& x, const ModelInputs& in, double dt, OutputModel model,
                         const WallDynamicsConfig& cfg) {
    return integrate_step(x, dt, make_stage_model(in, model), cfg);
}

}  // namespace hxtwin
