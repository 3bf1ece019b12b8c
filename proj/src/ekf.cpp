#include "hxtwin/ekf.hpp"

#include "hxtwin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hxtwin {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::A: return "A";
        case Variant::B: return "B";
        case Variant::C: return "C";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "A" || s == "a") return Variant::A;
    if (s == "B" || s == "b") return Variant::B;
    if (s == "C" || s == "c") return Variant::C;
    throw ConfigError("unknown filter variant '" + s + "' (expected A, B or C)");
}

namespace {

void check_density(const Eigen::MatrixXd& R, const char* name) {
    if (!R.allFinite() || (R - R.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, R.cwiseAbs().maxCoeff())) {
        throw ConfigError(std::string(name) + " must be finite and symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, R.cwiseAbs().maxCoeff())) {
        throw ConfigError(std::string(name) + " must be positive semidefinite");
    }
}

}  // namespace

void validate(const EkfConfig& cfg) {
    check_density(cfg.Rx, "Rx");
    check_density(cfg.Rupsilon, "Rupsilon");
    check_density(cfg.Ry, "Ry");
    if (!(cfg.Rmdotc >= 0.0)) throw ConfigError("Rmdotc must be non-negative");
    if (!(cfg.jacobian_step > 0.0) || !(cfg.jacobian_floor > 0.0)) throw ConfigError("Jacobian steps must be positive");
    validate(cfg.wall);
}

MappedState map_state(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    if (xa.size() != cfg.state_dim()) throw DimensionMismatch("augmented state has wrong dimension");
    MappedState m;
    m.x = {xa[0], xa[1]};
    m.u = ctx.u;
    double ups_h = xa[2], ups_c = xa[3];
    if (ups_h < kUpsilonFloor) { ups_h = kUpsilonFloor; m.floored = true; }
    if (ups_c < kUpsilonFloor) { ups_c = kUpsilonFloor; m.floored = true; }
    if (cfg.variant != Variant::A) {
        m.u.mdot_c = xa[4];
        if (m.u.mdot_c < kMdotCFloor) { m.u.mdot_c = kMdotCFloor; m.floored = true; }
    }
    m.cond = {alpha_A(m.u.mdot_h, ctx.cp.theta3, ups_h, ctx.hot_corr),
              alpha_A(m.u.mdot_c, ctx.cp.theta4, ups_c, ctx.cold_corr)};
    m.cond_steady = {alpha_A(m.u.mdot_h, ctx.cp.theta5, ups_h, ctx.hot_corr),
                     alpha_A(m.u.mdot_c, ctx.cp.theta6, ups_c, ctx.cold_corr)};
    return m;
}

Eigen::VectorXd f_aug(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    MappedState m = map_state(xa, ctx, cfg);
    ApproxSteady st = approx_steady_state(m.u, m.cond_steady, ctx.cp);
    BetaPair b = select_betas(m.x, m.u, m.cond, ctx.cp, st);
    OutletTemps y = approx_output(m.x, m.u, m.cond, ctx.cp, b);
    WallRate r = wall_rhs(m.x, st.walls, hot_wall_flux(m.x, m.u, y.T_h2, m.cond.aA_h),
                          cold_wall_flux(m.x, m.u, y.T_c2, m.cond.aA_c), cfg.wall);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(xa.size());
    f[0] = r.dT_w1;
    f[1] = r.dT_w2;
    return f;
}

OutletTemps g_full(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    MappedState m = map_state(xa, ctx, cfg);
    ApproxSteady st = approx_steady_state(m.u, m.cond_steady, ctx.cp);
    BetaPair b = select_betas(m.x, m.u, m.cond, ctx.cp, st);
    return approx_output(m.x, m.u, m.cond, ctx.cp, b);
}

Eigen::VectorXd g_aug(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    OutletTemps y = g_full(xa, ctx, cfg);
    Eigen::VectorXd g(cfg.meas_dim());
    g[0] = y.T_h2;
    if (cfg.meas_dim() == 2) g[1] = y.T_c2;
    return g;
}

namespace {

template <class Fn>
Eigen::MatrixXd central_jacobian(const Fn& fn, const Eigen::VectorXd& xa, int rows, const EkfConfig& cfg) {
    Eigen::MatrixXd J(rows, xa.size());
    Eigen::VectorXd xp = xa, xm = xa;
    for (Eigen::Index i = 0; i < xa.size(); ++i) {
        double h = std::max(cfg.jacobian_step * std::abs(xa[i]), cfg.jacobian_floor);
        xp[i] = xa[i] + h;
        xm[i] = xa[i] - h;
        J.col(i) = (fn(xp) - fn(xm)) / (2.0 * h);
        xp[i] = xm[i] = xa[i];
    }
    return J;
}

}  // namespace

Eigen::MatrixXd jacobian_F(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    auto f = [&](const Eigen::VectorXd& v) { return f_aug(v, ctx, cfg); };
    Eigen::MatrixXd F = central_jacobian(f, xa, static_cast<int>(xa.size()), cfg);
    F.bottomRows(xa.size() - 2).setZero();  // parameters have zero drift
    return F;
}

Eigen::MatrixXd jacobian_H(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    auto g = [&](const Eigen::VectorXd& v) { return g_aug(v, ctx, cfg); };
    return central_jacobian(g, xa, cfg.meas_dim(), cfg);
}

Jacobians jacobians(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg) {
    return {jacobian_F(xa, ctx, cfg), jacobian_H(xa, ctx, cfg)};
}

Eigen::MatrixXd process_density(const EkfConfig& cfg) {
    const int n = cfg.state_dim();
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    R.block<2, 2>(0, 0) = cfg.Rx;
    R.block<2, 2>(2, 2) = cfg.Rupsilon;
    if (n == 5) R(4, 4) = cfg.Rmdotc;
    return R;
}

EkfState ekf_init(const Eigen::VectorXd& x0, const EkfConfig& cfg, double t0) {
    if (x0.size() != cfg.state_dim()) {
        throw DimensionMismatch("variant " + std::string(to_string(cfg.variant)) + " expects a " +
                                std::to_string(cfg.state_dim()) + "-dimensional state");
    }
    return {x0, process_density(cfg) * 1.0, t0};
}

EkfState predict(const EkfState& s, const EkfContext& ctx, const EkfConfig& cfg, double dt) {
    if (dt < 0.0) throw DomainError("prediction interval must be non-negative");
    EkfState out = s;
    out.t = s.t + dt;
    if (dt == 0.0) return out;
    const Eigen::MatrixXd R = process_density(cfg);
    const int n = std::max(cfg.wall.substeps_per_sample, 1);
    const double h = dt / n;

    // F is frozen over each substep at its starting state. Near the steady
    // target the wall rate switches sector between RK stages, and mixing
    // the resulting Jacobians in one Riccati step can break definiteness.
    Eigen::VectorXd x = s.x;
    Eigen::MatrixXd P = s.P;
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd F = jacobian_F(x, ctx, cfg);
        auto dP = [&](const Eigen::MatrixXd& Q) -> Eigen::MatrixXd { return F * Q + Q * F.transpose() + R; };
        Eigen::VectorXd k1 = f_aug(x, ctx, cfg);
        Eigen::VectorXd k2 = f_aug(x + 0.5 * h * k1, ctx, cfg);
        Eigen::VectorXd k3 = f_aug(x + 0.5 * h * k2, ctx, cfg);
        Eigen::VectorXd k4 = f_aug(x + h * k3, ctx, cfg);
        Eigen::MatrixXd m1 = dP(P);
        Eigen::MatrixXd m2 = dP(P + 0.5 * h * m1);
        Eigen::MatrixXd m3 = dP(P + 0.5 * h * m2);
        Eigen::MatrixXd m4 = dP(P + h * m3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        P += h / 6.0 * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
    }
    out.x = x;
    out.P = 0.5 * (P + P.transpose());
    return out;
}

UpdateResult update(const EkfState& s, const Eigen::VectorXd& y, const EkfContext& ctx, const EkfConfig& cfg,
                    double dt) {
    const int m = cfg.meas_dim();
    if (y.size() != m) throw DimensionMismatch("measurement has wrong dimension for the variant");
    if (!(dt > 0.0)) throw DomainError("update interval must be positive");
    UpdateResult r;
    r.y_pred = g_aug(s.x, ctx, cfg);
    r.innovation = y - r.y_pred;
    Eigen::MatrixXd H = jacobian_H(s.x, ctx, cfg);
    Eigen::MatrixXd Ry = cfg.Ry.topLeftCorner(m, m) / dt;
    Eigen::MatrixXd S = H * s.P * H.transpose() + Ry;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
    double scale = std::max(S.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    if (ldlt.info() != Eigen::Success || !S.allFinite() ||
        ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale) {
        throw SingularInnovationCovariance("innovation covariance is singular");
    }
    r.K = ldlt.solve(H * s.P).transpose();  // P H^T S^-1, using the symmetry of P and S
    r.state = s;
    r.state.x = s.x + r.K * r.innovation;
    // Joseph form keeps P positive semidefinite under rounding
    Eigen::MatrixXd IKH = Eigen::MatrixXd::Identity(s.P.rows(), s.P.cols()) - r.K * H;
    Eigen::MatrixXd P = IKH * s.P * IKH.transpose() + r.K * Ry * r.K.transpose();
    r.state.P = 0.5 * (P + P.transpose());
    return r;
}

double estimate_kA(const EkfState& s, const EkfContext& ctx, const EkfConfig& cfg) {
    return map_state(s.x, ctx, cfg).cond.kA();
}

}  // namespace hxtwin
