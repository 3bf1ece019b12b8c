#include "hxtwin/harness/simulate.hpp"

#include "hxtwin/harness/rng.hpp"
#include "hxtwin/reference_model.hpp"
#include "hxtwin/wall_dynamics.hpp"

#include <fmt/format.h>

namespace hxtwin {

RecordError::RecordError(std::size_t index, double t, const std::string& what)
    : Error(fmt::format("record {} (t = {} s): {}", index, t, what)), index_(index) {}

std::vector<TelemetryRecord> run_truth_sim(const ScenarioConfig& cfg) {
    validate(cfg.ekf.wall);
    const std::size_t n = cfg.record_count();
    std::vector<TelemetryRecord> out;
    out.reserve(n);
    GaussianRng rng(cfg.seed);
    WallState x;
    for (std::size_t k = 0; k < n; ++k) {
        double t = static_cast<double>(k) * cfg.dt;
        try {
            InletConditions u = cfg.inputs_at(t);
            Conductances cond = cfg.truth.at(t, u);
            validate(u);
            validate(cond);
            if (k == 0) {
                OutletTemps s = ref_steady_outlets(u, cond.kA(), cfg.streams);
                x = steady_wall_temps(s, u, cond);
            }
            RefOutput y = ref_output(x, u, cond, cfg.streams);
            TelemetryRecord r;
            r.t = t;
            r.u = u;
            r.p_h = cfg.streams.hot.pressure;
            r.p_c = cfg.streams.cold.pressure;
            r.y_true = y.y;
            double n_h = rng.normal(0.0, cfg.noise_std);
            double n_c = rng.normal(0.0, cfg.noise_std);
            r.y_meas = {y.y.T_h2 + n_h, y.y.T_c2 + n_c};
            r.x_true = x;
            r.cond_true = cond;
            r.kA_true = cond.kA();
            r.flags = (y.hot_flagged ? kHotOutletFlagged : 0u) | (y.cold_flagged ? kColdOutletFlagged : 0u);
            out.push_back(r);
            if (k + 1 < n) x = integrate_step(x, ModelInputs{u, cond, {}, &cfg.streams}, cfg.dt,
                                              OutputModel::reference, cfg.ekf.wall);
        } catch (const RecordError&) {
            throw;
        } catch (const Error& e) {
            throw RecordError(k, t, e.what());
        }
    }
    return out;
}

}  // namespace hxtwin
