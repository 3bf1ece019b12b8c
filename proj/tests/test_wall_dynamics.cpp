#include "hxtwin/approx_model.hpp"
#include "hxtwin/errors.hpp"
#include "hxtwin/reference_model.hpp"
#include "hxtwin/wall_dynamics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hxtwin;
using doctest::Approx;

namespace {

double norm(double a, double b) { return std::hypot(a, b); }

WallDynamicsConfig unit_capacity() {
    WallDynamicsConfig c;
    c.theta7 = 1000.0;
    return c;
}

}  // namespace

TEST_CASE("sector classification") {
    WallDynamicsConfig c;
    CHECK(classify_sector(2, 4, c) == Sector::I);
    CHECK(classify_sector(-1, -1, c) == Sector::III);
    CHECK(classify_sector(-3, 4, c) == Sector::II);
    CHECK(classify_sector(3, -4, c) == Sector::IV);
    CHECK(classify_sector(1e-12, -1e-12, c) == Sector::V);
    // axis points take the sign of the other component
    CHECK(classify_sector(0.0, 2.0, c) == Sector::I);
    CHECK(classify_sector(-2.0, 0.0, c) == Sector::III);
    CHECK(std::string(to_string(Sector::IV)) == "IV");
}

TEST_CASE("wall right-hand side") {
    WallDynamicsConfig c = unit_capacity();
    SUBCASE("sector I scales the error so that its mean equals the lumped rate") {
        WallRate r = wall_rhs({0.0, 0.0}, {2.0, 4.0}, -4000.0, 1000.0, c);
        CHECK(r.dT_w1 == Approx(2.0));
        CHECK(r.dT_w2 == Approx(4.0));
        CHECK(0.5 * (r.dT_w1 + r.dT_w2) == Approx(3.0));
    }
    SUBCASE("sector II has norm twice the lumped rate") {
        WallRate r = wall_rhs({3.0, -4.0}, {0.0, 0.0}, -1000.0, 0.0, c);
        CHECK(r.dT_w1 == Approx(-1.2));
        CHECK(r.dT_w2 == Approx(1.6));
        CHECK(norm(r.dT_w1, r.dT_w2) == Approx(2.0));
    }
    SUBCASE("sector V is at rest") {
        WallRate r = wall_rhs({300.0, 300.0}, {300.0 + 1e-12, 300.0}, -4000.0, 1000.0, c);
        CHECK(r.dT_w1 == 0.0);
        CHECK(r.dT_w2 == 0.0);
    }
    SUBCASE("lower bound keeps mixed sectors moving") {
        c.tdw_lower_bound = 0.5;
        WallRate r = wall_rhs({3.0, -4.0}, {0.0, 0.0}, 0.0, 0.0, c);
        CHECK(norm(r.dT_w1, r.dT_w2) == Approx(1.0));
        CHECK(r.dT_w1 < 0.0);
    }
}

TEST_CASE("wall right-hand side norm properties") {
    WallDynamicsConfig c = unit_capacity();
    c.tdw_lower_bound = 1e-3;
    test::Sampler s(61);
    for (int i = 0; i < 1000; ++i) {
        double e1 = s.uniform(-20, 20), e2 = s.uniform(-20, 20);
        double Qh = s.uniform(-5e4, 5e4), Qc = s.uniform(-5e4, 5e4);
        double Tw = (-Qh - Qc) / c.theta7;
        WallRate r = wall_rhs({0.0, 0.0}, {e1, e2}, Qh, Qc, c);
        double n = norm(r.dT_w1, r.dT_w2);
        // parallel to the error
        CHECK(std::abs(r.dT_w1 * e2 - r.dT_w2 * e1) <= 1e-9 * std::max(1.0, n * norm(e1, e2)));
        Sector sec = classify_sector(e1, e2, c);
        if (sec == Sector::I || sec == Sector::III) {
            CHECK(n <= 2.0 * std::abs(Tw) * (1 + 1e-12));
            CHECK(0.5 * (r.dT_w1 + r.dT_w2) == Approx(Tw).epsilon(1e-12).scale(1e-12));
        } else if (sec == Sector::II || sec == Sector::IV) {
            CHECK(n == Approx(2.0 * std::max(std::abs(Tw), c.tdw_lower_bound)).epsilon(1e-12));
        }
    }
}

TEST_CASE("integration leaves the equilibrium in place") {
    InletConditions u{400.0, 300.0, 1.0, 1.5};
    Conductances cond{800.0, 1200.0};
    CpParams cp{1000.0, 1500.0, 1000.0, 1500.0};
    WallDynamicsConfig c;
    WallState xs = approx_steady_state(u, cond, cp).walls;
    WallState x = integrate_step(xs, {u, cond, cp, nullptr}, 1.0, OutputModel::approximate, c);
    CHECK(std::abs(x.T_w1 - xs.T_w1) < 1e-9);
    CHECK(std::abs(x.T_w2 - xs.T_w2) < 1e-9);

    Streams s = test::constant_streams(1000.0, 1500.0);
    OutletTemps rs = ref_steady_outlets(u, cond.kA(), s);
    WallState rw = steady_wall_temps(rs, u, cond);
    WallState xr = integrate_step(rw, {u, cond, {}, &s}, 1.0, OutputModel::reference, c);
    CHECK(std::abs(xr.T_w1 - rw.T_w1) < 1e-9);
    CHECK(std::abs(xr.T_w2 - rw.T_w2) < 1e-9);
}

TEST_CASE("perturbed walls return monotonically to the steady state") {
    test::Sampler smp(67);
    WallDynamicsConfig c;
    for (int i = 0; i < 10; ++i) {
        InletConditions u = smp.inputs();
        Conductances cond = smp.conductances();
        double cp_h = smp.uniform(800, 5000), cp_c = smp.uniform(800, 5000);
        CpParams cp{cp_h, cp_c, cp_h, cp_c};
        WallState xs = approx_steady_state(u, cond, cp).walls;
        WallState x{xs.T_w1 + smp.uniform(-10, 10), xs.T_w2 + smp.uniform(-10, 10)};
        double prev = norm(x.T_w1 - xs.T_w1, x.T_w2 - xs.T_w2);
        int steps = 0;
        while (prev >= 0.01 && steps < 20000) {
            x = integrate_step(x, {u, cond, cp, nullptr}, 1.0, OutputModel::approximate, c);
            double d = norm(x.T_w1 - xs.T_w1, x.T_w2 - xs.T_w2);
            REQUIRE(d < prev);
            prev = d;
            ++steps;
        }
        CHECK(prev < 0.01);
    }
}

TEST_CASE("stiff high-NTU state still converges monotonically") {
    // cold wall end within a fraction of a kelvin of the coolant intake,
    // where a fixed 0.1 s stage overshoots
    InletConditions u{313.462, 263.656, 2.6041, 42.9691};
    Conductances cond{175323.0, 156473.0};
    Streams s = test::constant_streams(2368.08, 3914.09);
    ModelInputs in{u, cond, {2368.08, 3914.09, 2368.08, 3914.09}, &s};
    WallState xs = steady_wall_temps(ref_steady_outlets(u, cond.kA(), s), u, cond);
    WallState x{289.295961365, 268.856305912};
    WallDynamicsConfig c;
    double prev = norm(x.T_w1 - xs.T_w1, x.T_w2 - xs.T_w2);
    int steps = 0;
    while (prev >= 0.01 && steps < 1000) {
        x = integrate_step(x, in, 1.0, OutputModel::reference, c);
        double d = norm(x.T_w1 - xs.T_w1, x.T_w2 - xs.T_w2);
        REQUIRE(d < prev);
        prev = d;
        ++steps;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("substep refinement converges") {
    InletConditions u{345.0, 300.0, 30.0, 41.0};
    Conductances cond{8e4, 8.2e4};
    Streams s = test::constant_streams(2300.0, 3600.0);
    CpParams cp{2300.0, 3600.0, 2300.0, 3600.0};
    WallState xs = approx_steady_state(u, cond, cp).walls;
    WallState x0{xs.T_w1 + 3.0, xs.T_w2 - 2.0};
    WallDynamicsConfig coarse, fine;
    fine.substeps_per_sample = 100;
    for (OutputModel m : {OutputModel::approximate, OutputModel::reference}) {
        ModelInputs in{u, cond, cp, &s};
        WallState a = x0, b = x0;
        for (int k = 0; k < 30; ++k) {
            a = integrate_step(a, in, 1.0, m, coarse);
            b = integrate_step(b, in, 1.0, m, fine);
        }
        CHECK(std::abs(a.T_w1 - b.T_w1) < 1e-4);
        CHECK(std::abs(a.T_w2 - b.T_w2) < 1e-4);
    }
}

TEST_CASE("invalid wall settings are rejected") {
    WallDynamicsConfig c;
    c.theta7 = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.sector_v_epsilon = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.tdw_lower_bound = -1.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
}
