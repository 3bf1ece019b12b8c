#include "hxtwin/correlations.hpp"
#include "hxtwin/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hxtwin;
using doctest::Approx;

namespace {

// x^y through exp/log, independent of std::pow.
double pw(double x, double y) { return std::exp(y * std::log(x)); }

}  // namespace

TEST_CASE("monitored power law") {
    CHECK(alpha_A(17.0, 2300.0, 1000.0, {}) == 1000.0);
    CHECK(alpha_A(41.0, 3600.0, 100.0, {0.6, 0.0, 0.0}) == Approx(100.0 * pw(41.0, 0.6)).epsilon(1e-13));
    CHECK(alpha_A(41.0, 3600.0, 100.0, {0.6, 0.0, 0.0}) == Approx(928.3).epsilon(1e-4));
    CHECK(alpha_A(5.0, 2000.0, 0.0, {0.6, 0.3, 750.0}) == 750.0);
    CHECK(alpha_A(5.0, 2000.0, 3.0, {0.6, 0.3, 10.0}) == Approx(3.0 * pw(5.0, 0.6) * pw(2000.0, 0.3) + 10.0));
    CHECK_THROWS_AS(alpha_A(0.0, 2000.0, 3.0, {}), DomainError);
    CHECK_THROWS_AS(alpha_A(1.0, -1.0, 3.0, {}), DomainError);
    CHECK_THROWS_AS(alpha_A(1.0, 2000.0, 0.0, {}), NonPositiveConductance);
    CHECK_THROWS_AS(alpha_A(1.0, 2000.0, 10.0, {0, 0, -20.0}), NonPositiveConductance);
}

TEST_CASE("primary approach is the identity in upsilon") {
    test::Sampler s(71);
    for (int i = 0; i < 200; ++i) {
        double ups = s.uniform(1.0, 2e5);
        CHECK(alpha_A(s.uniform(0.1, 60), s.uniform(500, 1e4), ups, {}) == ups);
    }
}

TEST_CASE("reference correlations") {
    SUBCASE("cold side with unit properties") {
        CHECK(reference_alpha_A(Side::cold, 1.0, {1.0, 1.0, 1.0}) == Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("hot side against a product-of-powers oracle") {
        FluidProps p{4200.0, 2.5e-5, 0.04};
        double oracle = 37.0 * pw(30.0, 0.8) * pw(4200.0, 1.0 / 3.0) * pw(2.5e-5, -7.0 / 15.0) * pw(0.04, 2.0 / 3.0);
        CHECK(reference_alpha_A(Side::hot, 30.0, p) == Approx(oracle).epsilon(1e-12));
    }
    SUBCASE("cold side against a product-of-powers oracle") {
        FluidProps p{3600.0, 2.5e-3, 0.5};
        double oracle = 2.0 * pw(41.0, 0.8) * 3600.0 * pw(2.5e-3, 1.0 / 15.0);
        CHECK(reference_alpha_A(Side::cold, 41.0, p) == Approx(oracle).epsilon(1e-12));
    }
    SUBCASE("doubling the flow scales by 2^(4/5)") {
        test::Sampler s(73);
        for (int i = 0; i < 100; ++i) {
            FluidProps p{s.uniform(1000, 6000), s.uniform(1e-5, 1e-2), s.uniform(0.01, 1.0)};
            double m = s.uniform(0.5, 50);
            for (Side side : {Side::hot, Side::cold}) {
                CHECK(reference_alpha_A(side, 2 * m, p) / reference_alpha_A(side, m, p) ==
                      Approx(pw(2.0, 0.8)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("correlations increase with mass flow") {
    test::Sampler s(79);
    FluidProps p{4200.0, 2.5e-5, 0.04};
    for (int i = 0; i < 200; ++i) {
        double a = s.uniform(0.5, 60), b = s.uniform(0.5, 60);
        if (a > b) std::swap(a, b);
        if (a == b) continue;
        CHECK(alpha_A(a, 2000.0, 500.0, {0.6, 0.2, 10.0}) < alpha_A(b, 2000.0, 500.0, {0.6, 0.2, 10.0}));
        CHECK(reference_alpha_A(Side::hot, a, p) < reference_alpha_A(Side::hot, b, p));
        CHECK(reference_alpha_A(Side::cold, a, p) < reference_alpha_A(Side::cold, b, p));
    }
}

TEST_CASE("series conductance") {
    CHECK(series_conductance(2000.0, 2000.0) == Approx(1000.0));
    CHECK(series_conductance(1000.0, 1e15) == Approx(1000.0).epsilon(1e-9));
    CHECK_THROWS_AS(series_conductance(0.0, 10.0), NonPositiveConductance);
    test::Sampler s(83);
    for (int i = 0; i < 500; ++i) {
        Conductances c = s.conductances();
        CHECK(c.kA() < std::min(c.aA_h, c.aA_c));
        CHECK(c.kA() == Approx(series_conductance(c.aA_h, c.aA_c)));
    }
}
