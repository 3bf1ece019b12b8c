#include "hxtwin/ekf.hpp"
#include "hxtwin/errors.hpp"
#include "hxtwin/harness/config.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace hxtwin;
using doctest::Approx;

namespace {

EkfContext nominal_context() {
    EkfContext ctx;
    ctx.u = {345.0, 300.0, 30.0, 41.0};
    ctx.cp = {2300.0, 3600.0, 2300.0, 3600.0};
    return ctx;
}

Eigen::VectorXd steady_state(const EkfContext& ctx, const EkfConfig& cfg, double ups_h, double ups_c) {
    Eigen::VectorXd x(cfg.state_dim());
    x << 0.0, 0.0, ups_h, ups_c;
    if (cfg.state_dim() == 5) x[4] = ctx.u.mdot_c;
    MappedState m = map_state(x, ctx, cfg);
    WallState w = approx_steady_state(m.u, m.cond_steady, ctx.cp).walls;
    x[0] = w.T_w1;
    x[1] = w.T_w2;
    return x;
}

EkfConfig tuned(Variant v) { return default_ekf_config(566.5e3, 1.6e6, v); }

}  // namespace

TEST_CASE("initialization") {
    EkfConfig a = tuned(Variant::A);
    Eigen::VectorXd x0(4);
    x0 << 330, 320, 6e4, 6e4;
    EkfState s = ekf_init(x0, a);
    CHECK(s.P.rows() == 4);
    CHECK(s.P.block<2, 2>(0, 0).isApprox(a.Rx));
    CHECK(s.P.block<2, 2>(2, 2).isApprox(a.Rupsilon));
    CHECK(s.P.block<2, 2>(0, 2).isZero());
    CHECK(s.x == x0);
    // default tuning
    CHECK(a.Rx(0, 0) == Approx(0.1 * std::pow(1.6e6 / (100 * 566.5e3), 2)));
    CHECK(a.Rupsilon(1, 1) == Approx(0.1 * 100.0 * 100.0));
    CHECK(a.Ry(0, 0) == Approx(0.01));
    CHECK(a.Ry(0, 1) == 0.0);

    EkfConfig b = tuned(Variant::B);
    Eigen::VectorXd x5(5);
    x5 << 330, 320, 6e4, 6e4, 41;
    EkfState sb = ekf_init(x5, b);
    CHECK(sb.P.rows() == 5);
    CHECK(sb.P(4, 4) == Approx(0.1));
    CHECK_THROWS_AS(ekf_init(x0, b), DimensionMismatch);
    CHECK_THROWS_AS(ekf_init(x5, a), DimensionMismatch);
    CHECK(tuned(Variant::C).meas_dim() == 1);
}

TEST_CASE("zero parameter density freezes upsilon") {
    EkfConfig cfg = tuned(Variant::A);
    cfg.Rupsilon.setZero();
    EkfContext ctx = nominal_context();
    Eigen::VectorXd x = steady_state(ctx, cfg, 7e4, 7e4);
    x[0] += 1.0;
    EkfState s = ekf_init(x, cfg);
    Eigen::Vector2d y(331.0, 315.0);
    for (int k = 0; k < 100; ++k) {
        s = predict(s, ctx, cfg, 1.0);
        s = update(s, y, ctx, cfg, 1.0).state;
    }
    CHECK(std::abs(s.x[2] - 7e4) <= 1e-12 * 7e4);
    CHECK(std::abs(s.x[3] - 7e4) <= 1e-12 * 7e4);
}

TEST_CASE("prediction") {
    EkfConfig cfg = tuned(Variant::A);
    EkfContext ctx = nominal_context();
    Eigen::VectorXd xs = steady_state(ctx, cfg, 8e4, 8.2e4);
    SUBCASE("zero interval is the identity") {
        EkfState s = ekf_init(xs, cfg);
        EkfState p = predict(s, ctx, cfg, 0.0);
        CHECK(p.x == s.x);
        CHECK(p.P == s.P);
    }
    SUBCASE("equilibrium without process noise stays put") {
        EkfConfig z = cfg;
        z.Rx.setZero();
        z.Rupsilon.setZero();
        EkfState s = ekf_init(xs, z);
        EkfState p = predict(s, ctx, z, 1.0);
        CHECK((p.x - xs).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(p.P.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("substep refinement") {
        Eigen::VectorXd x = xs;
        x[0] += 2.0;
        x[1] -= 1.0;
        EkfConfig fine = cfg;
        fine.wall.substeps_per_sample = 100;
        EkfState a = predict(ekf_init(x, cfg), ctx, cfg, 1.0);
        EkfState b = predict(ekf_init(x, fine), ctx, fine, 1.0);
        CHECK((a.x - b.x).cwiseAbs().maxCoeff() < 1e-5);
        CHECK(a.P.isApprox(a.P.transpose()));
    }
    SUBCASE("negative interval is rejected") {
        CHECK_THROWS_AS(predict(ekf_init(xs, cfg), ctx, cfg, -1.0), DomainError);
    }
}

TEST_CASE("measurement update") {
    EkfConfig cfg = tuned(Variant::A);
    EkfContext ctx = nominal_context();
    Eigen::VectorXd x = steady_state(ctx, cfg, 8e4, 8.2e4);
    EkfState s = ekf_init(x, cfg);
    Eigen::VectorXd y0 = g_aug(x, ctx, cfg);

    SUBCASE("zero innovation leaves the estimate and shrinks P") {
        UpdateResult r = update(s, y0, ctx, cfg, 1.0);
        CHECK(r.innovation.cwiseAbs().maxCoeff() == 0.0);
        CHECK(r.state.x == s.x);
        CHECK(r.state.P.trace() <= s.P.trace());
        CHECK(r.state.P == r.state.P.transpose());
    }
    SUBCASE("distrusted measurements give no gain") {
        EkfConfig d = cfg;
        d.Ry *= 1e12;
        Eigen::VectorXd y = y0 + Eigen::Vector2d(1.0, -1.0);
        UpdateResult r = update(s, y, ctx, d, 1.0);
        CHECK(r.K.cwiseAbs().maxCoeff() < 1e-6);
        CHECK((r.state.x - s.x).cwiseAbs().maxCoeff() < 1e-6);
    }
    SUBCASE("gain matches the textbook formula") {
        Eigen::VectorXd y = y0 + Eigen::Vector2d(0.3, -0.2);
        double dt = 2.0;
        UpdateResult r = update(s, y, ctx, cfg, dt);
        Eigen::MatrixXd H = jacobian_H(x, ctx, cfg);
        Eigen::MatrixXd K = s.P * H.transpose() * (H * s.P * H.transpose() + cfg.Ry / dt).inverse();
        CHECK((r.K - K).cwiseAbs().maxCoeff() <= 1e-9 * K.cwiseAbs().maxCoeff());
    }
    SUBCASE("scalar case") {
        // hot-only measurement, variance on one wall temperature only
        EkfConfig c = tuned(Variant::C);
        Eigen::VectorXd x5(5);
        x5 << x, ctx.u.mdot_c;
        EkfState sc = ekf_init(x5, c);
        sc.P.setZero();
        sc.P(1, 1) = 0.7;
        double h = jacobian_H(x5, ctx, c)(0, 1);
        double dt = 1.0;
        Eigen::VectorXd y(1);
        y[0] = g_aug(x5, ctx, c)[0] + 0.5;
        UpdateResult r = update(sc, y, ctx, c, dt);
        double K = 0.7 * h / (h * 0.7 * h + c.Ry(0, 0) / dt);
        CHECK(r.K(1, 0) == Approx(K).epsilon(1e-12));
        CHECK(r.state.x[1] == Approx(x5[1] + K * 0.5).epsilon(1e-14));
        CHECK(r.state.P(1, 1) == Approx(0.7 * (1 - K * h)).epsilon(1e-12));
        CHECK(r.K(0, 0) == 0.0);
    }
    SUBCASE("wrong measurement size and singular covariance") {
        CHECK_THROWS_AS(update(s, Eigen::VectorXd::Zero(1), ctx, cfg, 1.0), DimensionMismatch);
        EkfConfig z = cfg;
        z.Rx.setZero();
        z.Rupsilon.setZero();
        z.Ry.setZero();
        CHECK_THROWS_AS(update(ekf_init(x, z), y0, ctx, z, 1.0), SingularInnovationCovariance);
    }
}

TEST_CASE("Jacobians") {
    EkfConfig cfg = tuned(Variant::B);
    EkfContext ctx = nominal_context();
    // low conductances keep the outlet sensitivities well above rounding
    Eigen::VectorXd xs = steady_state(ctx, cfg, 5e3, 6e3);
    Eigen::VectorXd x = xs;
    x[0] += 1.5;
    x[1] += 0.5;
    Jacobians J = jacobians(x, ctx, cfg);
    CHECK(J.F.rows() == 5);
    CHECK(J.H.rows() == 2);
    CHECK(J.F.bottomRows(3).cwiseAbs().maxCoeff() == 0.0);

    SUBCASE("measurement sensitivities agree with a one-sided half-step difference") {
        for (int i = 2; i < 5; ++i) {
            double h = 0.5 * std::max(cfg.jacobian_step * std::abs(x[i]), cfg.jacobian_floor);
            Eigen::VectorXd xp = x;
            xp[i] += h;
            Eigen::VectorXd d = (g_aug(xp, ctx, cfg) - g_aug(x, ctx, cfg)) / h;
            for (int r = 0; r < 2; ++r) {
                CHECK(J.H(r, i) == Approx(d[r]).epsilon(1e-4).scale(1e-12));
            }
        }
    }
    SUBCASE("linearization at the steady state is stable") {
        Eigen::MatrixXd F = jacobian_F(xs, ctx, cfg);
        Eigen::EigenSolver<Eigen::Matrix2d> es(F.topLeftCorner<2, 2>());
        for (int i = 0; i < 2; ++i) CHECK(es.eigenvalues()[i].real() <= 1e-12);
    }
    SUBCASE("variant C measures the hot outlet only") {
        EkfConfig c = tuned(Variant::C);
        Jacobians Jc = jacobians(x, ctx, c);
        CHECK(Jc.H.rows() == 1);
        CHECK(Jc.H.row(0).isApprox(J.H.row(0)));
    }
}

TEST_CASE("overall conductance of the estimate") {
    EkfConfig cfg = tuned(Variant::A);
    EkfContext ctx = nominal_context();
    Eigen::VectorXd x(4);
    x << 330, 320, 2000, 2000;
    CHECK(estimate_kA(ekf_init(x, cfg), ctx, cfg) == Approx(1000.0));
    x[3] = 1e15;
    CHECK(estimate_kA(ekf_init(x, cfg), ctx, cfg) == Approx(2000.0).epsilon(1e-9));
    // floors keep the mapping positive
    x << 330, 320, -5.0, 2000;
    MappedState m = map_state(x, ctx, cfg);
    CHECK(m.floored);
    CHECK(m.cond.aA_h == kUpsilonFloor);
}

TEST_CASE("tuning validation") {
    EkfConfig cfg = tuned(Variant::A);
    cfg.Ry(0, 1) = 1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = tuned(Variant::A);
    cfg.Rx(0, 0) = -1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    CHECK(parse_variant("b") == Variant::B);
    CHECK_THROWS_AS(parse_variant("D"), ConfigError);
}
