#include "hxtwin/harness/monitor.hpp"

#include "hxtwin/approx_model.hpp"
#include "hxtwin/harness/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace hxtwin {

namespace {

InletConditions fed_inputs(const TelemetryRecord& r, const ScenarioConfig& cfg) {
    InletConditions u = r.u;
    if (cfg.ekf.variant == Variant::A && cfg.monitor.mdot_c_given) u.mdot_c = *cfg.monitor.mdot_c_given;
    return u;
}

// theta3/theta4 from the previous model outputs, then re-evaluated at the
// outputs of the current prior until these move less than 1e-4 K (at most
// `passes` evaluations); theta5/theta6 from the steady fixed point at the
// current estimate.
void refresh_cp(EkfContext& ctx, const Eigen::VectorXd& xa, OutletTemps y, const Streams& ms, const EkfConfig& ec,
                int passes) {
    for (int i = 0; i < passes; ++i) {
        ctx.cp.theta3 = mean_specific_heat(ms.hot.fluid, ctx.u.T_h1, y.T_h2, ms.hot.pressure);
        ctx.cp.theta4 = mean_specific_heat(ms.cold.fluid, ctx.u.T_c1, y.T_c2, ms.cold.pressure);
        MappedState m = map_state(xa, ctx, ec);
        refresh_steady_cp(ms, m.u, m.cond_steady.kA(), ctx.cp);
        if (i + 1 == passes) break;
        OutletTemps next = g_full(xa, ctx, ec);
        double change = std::max(std::abs(next.T_h2 - y.T_h2), std::abs(next.T_c2 - y.T_c2));
        y = next;
        if (change < 1e-4) break;
    }
}

EkfContext base_context(const ScenarioConfig& cfg) {
    EkfContext ctx;
    ctx.hot_corr = cfg.monitor.corr.hot();
    ctx.cold_corr = cfg.monitor.corr.cold();
    return ctx;
}

}  // namespace

Eigen::VectorXd initial_estimate(const TelemetryRecord& first, const ScenarioConfig& cfg) {
    const EkfConfig& ec = cfg.ekf;
    Streams ms = cfg.monitor_streams();
    EkfContext ctx = base_context(cfg);
    ctx.u = fed_inputs(first, cfg);
    ctx.cp = seed_cp_params(ms, ctx.u);
    Eigen::VectorXd x(ec.state_dim());
    x << 0.0, 0.0, cfg.monitor.corr.upsilon_h, cfg.monitor.corr.upsilon_c;
    if (ec.state_dim() == 5) x[4] = cfg.monitor.mdot_c0.value_or(cfg.nominal.mdot_c);
    MappedState m = map_state(x, ctx, ec);
    refresh_steady_cp(ms, m.u, m.cond_steady.kA(), ctx.cp);
    m = map_state(x, ctx, ec);
    WallState w = approx_steady_state(m.u, m.cond_steady, ctx.cp).walls;
    x[0] = w.T_w1;
    x[1] = w.T_w2;
    return x;
}

std::vector<MonitorRecord> run_monitor(const std::vector<TelemetryRecord>& tel, const ScenarioConfig& cfg,
                                       MonitorDiagnostics* diag) {
    if (tel.empty()) throw Error("telemetry is empty");
    const EkfConfig& ec = cfg.ekf;
    validate(ec);
    const Streams ms = cfg.monitor_streams();
    const int m = ec.meas_dim();

    std::vector<MonitorRecord> out;
    out.reserve(tel.size());
    EkfContext ctx = base_context(cfg);
    EkfState state;
    OutletTemps y_prev;
    bool first_audit = true;
    auto audit = [&](const Eigen::MatrixXd& P) {
        if (!diag) return;
        double d = P.diagonal().minCoeff();
        double asym = (P - P.transpose()).cwiseAbs().maxCoeff();
        diag->min_P_diag = first_audit ? d : std::min(diag->min_P_diag, d);
        diag->max_P_asymmetry = first_audit ? asym : std::max(diag->max_P_asymmetry, asym);
        first_audit = false;
    };

    for (std::size_t k = 0; k < tel.size(); ++k) {
        const TelemetryRecord& r = tel[k];
        try {
            MonitorRecord rec;
            rec.t = r.t;
            Eigen::VectorXd x_prior;
            if (k == 0) {
                state = ekf_init(initial_estimate(r, cfg), ec, r.t);
                ctx.u = fed_inputs(r, cfg);
                ctx.cp = seed_cp_params(ms, ctx.u);
                refresh_cp(ctx, state.x, {r.u.T_h1, r.u.T_c1}, ms, ec, cfg.monitor.cp_passes);
                x_prior = state.x;
                audit(state.P);
                rec.flags |= kNoUpdate;
            } else {
                double dt = r.t - tel[k - 1].t;
                state = predict(state, ctx, ec, dt);  // ctx still holds record k-1
                audit(state.P);
                ctx.u = fed_inputs(r, cfg);
                refresh_cp(ctx, state.x, y_prev, ms, ec, cfg.monitor.cp_passes);
                x_prior = state.x;
                Eigen::VectorXd y(m);
                y[0] = r.y_meas.T_h2;
                if (m == 2) y[1] = r.y_meas.T_c2;
                UpdateResult up = update(state, y, ctx, ec, dt);
                state = up.state;
                audit(state.P);
                rec.innov_h2 = up.innovation[0];
                if (m == 2) rec.innov_c2 = up.innovation[1];
            }
            OutletTemps g_prior = g_full(x_prior, ctx, ec);
            rec.eps_h2 = r.y_true.T_h2 - g_prior.T_h2;
            rec.eps_c2 = r.y_true.T_c2 - g_prior.T_c2;

            MappedState ms_post = map_state(state.x, ctx, ec);
            rec.x_hat = {state.x[0], state.x[1]};
            rec.ups_h = state.x[2];
            rec.ups_c = state.x[3];
            rec.mdot_c = ms_post.u.mdot_c;
            rec.cond_hat = ms_post.cond;
            rec.kA_hat = ms_post.cond.kA();
            if (ms_post.floored) rec.flags |= kFloorActive;
            out.push_back(rec);
            y_prev = g_full(state.x, ctx, ec);
        } catch (const RecordError&) {
            throw;
        } catch (const Error& e) {
            throw RecordError(k, r.t, e.what());
        }
    }
    return out;
}

}  // namespace hxtwin
