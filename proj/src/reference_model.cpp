#include "hxtwin/reference_model.hpp"

#include "hxtwin/errors.hpp"
#include "hxtwin/means.hpp"

#include <algorithm>
#include <cmath>

namespace hxtwin {

namespace {

// Heat rate as the one-sided limit at a bracket end where one temperature
// difference vanishes. LM(z, 0+) -> 0 for z > 0, whereas the unrestricted
// function jumps to the arithmetic mean exactly at zero.
double heat_rate_edge(double z1, double z2, double z3) {
    if ((z1 == 0.0 && z2 > 0.0) || (z2 == 0.0 && z1 > 0.0)) return 0.0;
    return heat_rate(z1, z2, z3);
}

}  // namespace

double hot_enthalpy_rate(double T_h2, const InletConditions& u, const StreamConfig& hot) {
    return u.mdot_h * (hot.fluid.enthalpy(T_h2, hot.pressure) - hot.fluid.enthalpy(u.T_h1, hot.pressure));
}

double cold_enthalpy_rate(double T_c2, const InletConditions& u, const StreamConfig& cold) {
    return u.mdot_c * (cold.fluid.enthalpy(T_c2, cold.pressure) - cold.fluid.enthalpy(u.T_c1, cold.pressure));
}

double hot_residual(double T_h2, const WallState& x, const InletConditions& u, double aA_h, const StreamConfig& hot) {
    return hot_enthalpy_rate(T_h2, u, hot) + heat_rate(u.T_h1 - x.T_w1, T_h2 - x.T_w2, aA_h);
}

double cold_residual(double T_c2, const WallState& x, const InletConditions& u, double aA_c,
                     const StreamConfig& cold) {
    return cold_enthalpy_rate(T_c2, u, cold) - heat_rate(x.T_w1 - T_c2, x.T_w2 - u.T_c1, aA_c);
}

RefOutput ref_output(const WallState& x, const InletConditions& u, const Conductances& cond, const Streams& streams,
                     const RootOptions& opts) {
    validate(u);
    validate(cond);
    if (x.T_w2 > u.T_h1) throw BracketError("hot outlet bracket inverted: T_w2 > T_h1");
    if (u.T_c1 > x.T_w1) throw BracketError("cold outlet bracket inverted: T_c1 > T_w1");

    RefOutput out;
    const auto& hot = streams.hot;
    const auto& cold = streams.cold;

    // hot side: T_h2 in [T_w2, T_h1]
    {
        double lo = x.T_w2, hi = u.T_h1;
        double z1 = u.T_h1 - x.T_w1;
        if (lo == hi) {
            out.y.T_h2 = hi;
            out.hot_residual = hot_residual(hi, x, u, cond.aA_h, hot);
        } else {
            double f_lo = hot_enthalpy_rate(lo, u, hot) + heat_rate_edge(z1, 0.0, cond.aA_h);
            double f_hi = hot_residual(hi, x, u, cond.aA_h, hot);
            if (f_lo > 0.0 || f_hi < 0.0) {
                out.hot_flagged = true;
                bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
                out.y.T_h2 = take_lo ? lo : hi;
                out.hot_residual = take_lo ? f_lo : f_hi;
            } else {
                auto r = solve_bracketed([&](double T) { return hot_residual(T, x, u, cond.aA_h, hot); }, lo, hi,
                                         f_lo, f_hi, opts);
                out.y.T_h2 = r.x;
                out.hot_residual = r.f;
            }
        }
    }
    // cold side: T_c2 in [T_c1, T_w1]
    {
        double lo = u.T_c1, hi = x.T_w1;
        double z2 = x.T_w2 - u.T_c1;
        if (lo == hi) {
            out.y.T_c2 = lo;
            out.cold_residual = cold_residual(lo, x, u, cond.aA_c, cold);
        } else {
            double f_lo = cold_residual(lo, x, u, cond.aA_c, cold);
            double f_hi = cold_enthalpy_rate(hi, u, cold) - heat_rate_edge(0.0, z2, cond.aA_c);
            if (f_lo > 0.0 || f_hi < 0.0) {
                out.cold_flagged = true;
                bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
                out.y.T_c2 = take_lo ? lo : hi;
                out.cold_residual = take_lo ? f_lo : f_hi;
            } else {
                auto r = solve_bracketed([&](double T) { return cold_residual(T, x, u, cond.aA_c, cold); }, lo, hi,
                                         f_lo, f_hi, opts);
                out.y.T_c2 = r.x;
                out.cold_residual = r.f;
            }
        }
    }
    return out;
}

double steady_residual_s1(double T_h2s, double T_c2s, const InletConditions& u, const Streams& streams) {
    return cold_enthalpy_rate(T_c2s, u, streams.cold) + hot_enthalpy_rate(T_h2s, u, streams.hot);
}

double steady_residual_s2(double T_h2s, double T_c2s, const InletConditions& u, double kA, const Streams& streams) {
    return cold_enthalpy_rate(T_c2s, u, streams.cold) - heat_rate(u.T_h1 - T_c2s, T_h2s - u.T_c1, kA);
}

namespace {

// Steady solve machinery shared by ref_steady_outlets and verify_uniqueness.
struct SteadyProblem {
    const InletConditions& u;
    double kA;
    const Streams& streams;
    RootOptions opts;

    // Hot outlet paired with a cold outlet through the enthalpy balance,
    // searched between the two intake temperatures.
    double paired_hot_outlet(double T_c2) const {
        double H_c = cold_enthalpy_rate(T_c2, u, streams.cold);
        auto g = [&](double T) { return hot_enthalpy_rate(T, u, streams.hot) + H_c; };
        double lo = std::min(u.T_h1, u.T_c1), hi = std::max(u.T_h1, u.T_c1);
        double g_lo = g(lo), g_hi = g(hi);
        if (g_lo >= 0.0) return lo;
        if (g_hi <= 0.0) return hi;
        return solve_bracketed(g, lo, hi, g_lo, g_hi, opts).x;
    }

    double outer(double T_c2) const {
        return steady_residual_s2(paired_hot_outlet(T_c2), T_c2, u, kA, streams);
    }

    // Outer residual with the one-sided heat-rate limit at a vanishing
    // temperature difference. At the far end of a bracket where the hot
    // stream is exhausted the pairing is exact; a root-finder tolerance there
    // would be amplified by the slowly decaying log mean at high NTU.
    double outer_edge(double T_c2, bool hot_exhausted = false) const {
        double T_h2 = hot_exhausted ? u.T_c1 : paired_hot_outlet(T_c2);
        return cold_enthalpy_rate(T_c2, u, streams.cold) - heat_rate_edge(u.T_h1 - T_c2, T_h2 - u.T_c1, kA);
    }

    // Cold outlet range over which the paired hot outlet stays between the
    // intake temperatures.
    struct Bracket {
        double lo, hi;
        bool hot_exhausted;  // far end pairs with a hot outlet at T_c1
    };
    Bracket outer_bracket() const {
        double H_h_full = hot_enthalpy_rate(u.T_c1, u, streams.hot);  // hot stream brought to T_c1
        auto h = [&](double T) { return cold_enthalpy_rate(T, u, streams.cold) + H_h_full; };
        double far = u.T_h1;
        double h_far = h(far);
        bool forward = u.T_h1 > u.T_c1;
        bool exhausted = (forward && h_far > 0.0) || (!forward && h_far < 0.0);
        if (exhausted) {
            double a = std::min(u.T_c1, u.T_h1), b = std::max(u.T_c1, u.T_h1);
            double fa = h(a), fb = h(b);
            far = solve_bracketed(h, a, b, fa, fb, opts).x;
        }
        return forward ? Bracket{u.T_c1, far, exhausted} : Bracket{far, u.T_c1, exhausted};
    }
};

}  // namespace

OutletTemps ref_steady_outlets(const InletConditions& u, double kA, const Streams& streams, const RootOptions& opts) {
    validate(u);
    if (!(kA > 0.0)) throw NonPositiveConductance("kA must be positive");
    if (u.T_h1 == u.T_c1) return {u.T_h1, u.T_c1};

    SteadyProblem sp{u, kA, streams, opts};
    auto [lo, hi, exhausted] = sp.outer_bracket();
    if (!(hi > lo)) throw NoSolution("steady bracket collapsed");
    bool forward = u.T_h1 > u.T_c1;
    double f_lo = sp.outer_edge(lo, exhausted && !forward);
    double f_hi = sp.outer_edge(hi, exhausted && forward);
    if (f_lo > 0.0 || f_hi < 0.0) throw NoSolution("steady residual has no sign change over the bracket");
    auto r = solve_bracketed([&](double T) { return sp.outer(T); }, lo, hi, f_lo, f_hi, opts);
    double T_c2s = r.x;
    return {sp.paired_hot_outlet(T_c2s), T_c2s};
}

WallState steady_wall_temps(const OutletTemps& steady, const InletConditions& u, const Conductances& cond) {
    double w = cond.aA_c / (cond.aA_h + cond.aA_c);
    return {u.T_h1 + w * (steady.T_c2 - u.T_h1), steady.T_h2 + w * (u.T_c1 - steady.T_h2)};
}

double steady_residual_s3(const WallState& w, const OutletTemps& s, const InletConditions& u,
                          const Conductances& cond) {
    return heat_rate(u.T_h1 - s.T_c2, s.T_h2 - u.T_c1, cond.kA()) -
           heat_rate(u.T_h1 - w.T_w1, s.T_h2 - w.T_w2, cond.aA_h);
}

double steady_residual_s4(const WallState& w, const OutletTemps& s, const InletConditions& u,
                          const Conductances& cond) {
    return heat_rate(u.T_h1 - s.T_c2, s.T_h2 - u.T_c1, cond.kA()) -
           heat_rate(w.T_w1 - s.T_c2, w.T_w2 - u.T_c1, cond.aA_c);
}

UniquenessReport verify_uniqueness(const InletConditions& u, const Conductances& cond, const Streams& streams,
                                   int grid_n) {
    UniquenessReport rep;
    grid_n = std::max(grid_n, 100);
    validate(u);
    validate(cond);

    if (u.T_h1 == u.T_c1) {
        rep.degenerate = true;
        rep.steady = {u.T_h1, u.T_c1};
        rep.walls = steady_wall_temps(rep.steady, u, cond);
        auto y = ref_output(rep.walls, u, cond, streams);
        bool fixed = std::abs(y.y.T_h2 - u.T_h1) < 1e-9 && std::abs(y.y.T_c2 - u.T_c1) < 1e-9 &&
                     rep.walls.T_w1 == u.T_h1 && rep.walls.T_w2 == u.T_h1;
        rep.hot_residual_increasing = rep.cold_residual_increasing = true;
        rep.passed = fixed;
        rep.notes.push_back(fixed ? "degenerate: equal intake temperatures, fixed point confirmed"
                                  : "degenerate: fixed point NOT reproduced");
        return rep;
    }

    const double kA = cond.kA();
    SteadyProblem sp{u, kA, streams, {}};
    auto [lo, hi, exhausted] = sp.outer_bracket();
    bool forward = u.T_h1 > u.T_c1;

    // sign changes of the outer residual over the scan (endpoints as limits)
    int prev_sign = 0;
    for (int i = 0; i <= grid_n; ++i) {
        double T = lo + (hi - lo) * i / grid_n;
        double f = i == 0         ? sp.outer_edge(T, exhausted && !forward)
                   : i == grid_n ? sp.outer_edge(T, exhausted && forward)
                                 : sp.outer(T);
        int s = (f > 0.0) - (f < 0.0);
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) ++rep.sign_changes;
        prev_sign = s;
    }

    rep.steady = ref_steady_outlets(u, kA, streams);
    rep.walls = steady_wall_temps(rep.steady, u, cond);

    // strict increase of the output residuals on the open brackets
    auto increasing = [&](auto&& f, double a, double b) {
        if (!(b > a)) return true;
        double prev = f(a + (b - a) * 0.5 / grid_n);
        for (int i = 1; i < grid_n; ++i) {
            double v = f(a + (b - a) * (i + 0.5) / grid_n);
            if (!(v > prev)) return false;
            prev = v;
        }
        return true;
    };
    rep.hot_residual_increasing = increasing(
        [&](double T) { return hot_residual(T, rep.walls, u, cond.aA_h, streams.hot); }, rep.walls.T_w2, u.T_h1);
    rep.cold_residual_increasing = increasing(
        [&](double T) { return cold_residual(T, rep.walls, u, cond.aA_c, streams.cold); }, u.T_c1, rep.walls.T_w1);

    rep.residual_s3 = steady_residual_s3(rep.walls, rep.steady, u, cond);
    rep.residual_s4 = steady_residual_s4(rep.walls, rep.steady, u, cond);
    double H_h = hot_enthalpy_rate(rep.steady.T_h2, u, streams.hot);
    double H_c = cold_enthalpy_rate(rep.steady.T_c2, u, streams.cold);
    rep.energy_imbalance = std::abs(H_h + H_c);

    bool closure = rep.energy_imbalance <= 1e-5 * std::max(1.0, std::abs(H_h));
    rep.passed = rep.sign_changes == 1 && rep.hot_residual_increasing && rep.cold_residual_increasing &&
                 std::abs(rep.residual_s3) < 1e-6 && std::abs(rep.residual_s4) < 1e-6 && closure;
    if (rep.sign_changes != 1) rep.notes.push_back("outer steady residual sign changes != 1");
    if (!rep.hot_residual_increasing) rep.notes.push_back("hot output residual not strictly increasing");
    if (!rep.cold_residual_increasing) rep.notes.push_back("cold output residual not strictly increasing");
    if (!closure) rep.notes.push_back("energy closure violated");
    return rep;
}

}  // namespace hxtwin
