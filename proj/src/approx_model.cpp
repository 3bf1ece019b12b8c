#include "hxtwin/approx_model.hpp"

#include "hxtwin/errors.hpp"
#include "hxtwin/means.hpp"
#include "hxtwin/reference_model.hpp"

#include <algorithm>
#include <cmath>

namespace hxtwin {

namespace {

constexpr double kBetaSlack = 1e-12;

struct Xi {
    double xi1, xi2, xi3;
};

Xi xi_terms(const SideSubstitution& s, double beta) {
    const double aA = s.aA, C = s.C_p, dI = s.dT_I, dw = s.dT_w;
    return {aA * (1.0 - beta) + 2.0 * C, 2.0 * aA * (aA * dI - C * dw),
            4.0 * C * C * (dI + dw) + aA * (2.0 * C * dw - aA * dI)};
}

}  // namespace

SideSubstitution hot_substitution(const WallState& x, const InletConditions& u, double aA_h, double theta3) {
    return {u.T_h1 - x.T_w1, x.T_w1 - x.T_w2, u.mdot_h * theta3, -1.0, aA_h};
}

SideSubstitution cold_substitution(const WallState& x, const InletConditions& u, double aA_c, double theta4) {
    return {x.T_w2 - u.T_c1, x.T_w1 - x.T_w2, u.mdot_c * theta4, 1.0, aA_c};
}

double universal_residual(const SideSubstitution& s, double dT_II, double beta) {
    double H = s.gamma * s.C_p * (s.dT_I - dT_II + s.dT_w);
    double Q = s.gamma * s.aA * weighted_mean(s.dT_I, dT_II, beta);
    return H - Q;
}

bool BetaDomain::contains(double beta) const {
    if (empty || !(beta > 0.0)) return false;
    double slack = kBetaSlack * std::max(1.0, std::abs(hi));
    return beta >= lo - slack && beta <= hi + slack;
}

BetaDomain beta_domain(const SideSubstitution& s) {
    BetaDomain d;
    if (!(s.dT_I > 0.0)) return d;
    // Root-position condition dT_I*aA*beta <= xi4, squared:
    // dT_I*aA^2*beta^2 - xi2*beta - xi3 <= 0. It implies xi2*beta + xi3 >= 0.
    Xi xi = xi_terms(s, 0.0);  // xi2, xi3 do not depend on beta
    double a = s.dT_I * s.aA * s.aA;
    double disc = xi.xi2 * xi.xi2 + 4.0 * a * xi.xi3;
    if (disc < 0.0 || !(a > 0.0)) return d;
    double sq = std::sqrt(disc);
    d.beta_star1 = (xi.xi2 + sq) / (2.0 * a);
    d.beta_star2 = (xi.xi2 - sq) / (2.0 * a);
    d.lo = std::max(0.0, d.beta_star2);
    d.hi = std::min(1.0, d.beta_star1);
    d.empty = !(d.hi > 0.0) || d.lo > d.hi;
    return d;
}

namespace {

// Closed-form root for a beta already known to be feasible.
double g_feasible(const SideSubstitution& s, double beta) {
    const double aA = s.aA, dI = s.dT_I, dw = s.dT_w;
    Xi xi = xi_terms(s, beta);
    double xi4 = 0.0;
    if (beta > 0.0) {
        double rad = (xi.xi2 * beta + xi.xi3) * dI;
        xi4 = std::sqrt(std::max(rad, 0.0));  // negative only by rounding after the domain check
    }
    double g = dI + dw + 2.0 * aA * beta * (dI * aA * beta - xi4) / (xi.xi1 * xi.xi1) +
               aA * (2.0 * dI + dw) * (beta - 1.0) / xi.xi1;

    // One Newton step on the residual removes the cancellation error of the
    // closed form when C_p * dT is large.
    if (g > 0.0 && std::isfinite(g)) {
        double sq = std::sqrt(dI * g);
        double r = s.C_p * (dI - g + dw) - aA * (beta * sq + (1.0 - beta) * 0.5 * (dI + g));
        double dr = -(s.C_p + aA * (beta * 0.5 * sq / g + 0.5 * (1.0 - beta)));
        double polished = g - r / dr;
        if (std::isfinite(polished) && polished >= 0.0 && polished <= dI + dw) g = polished;
    }
    return g;
}

}  // namespace

double g_closed_form(const SideSubstitution& s, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta outside [0, 1]");
    if (beta > 0.0 && !beta_domain(s).contains(beta)) {
        throw DomainError("beta outside the feasible set for this substitution");
    }
    return g_feasible(s, beta);
}

double beta_lm(double dT_Is, double dT_IIs) {
    if (!(dT_Is > 0.0 && dT_IIs > 0.0)) return 2.0 / 3.0;
    if (std::abs(dT_Is / dT_IIs - 1.0) < 1e-6) return 2.0 / 3.0;
    double am = arith_mean(dT_Is, dT_IIs);
    return (am - log_mean(dT_Is, dT_IIs)) / (am - geom_mean(dT_Is, dT_IIs));
}

namespace {

BetaSelection select_with(const SideSubstitution& s, double b_lm) {
    BetaSelection sel;
    if (!(s.dT_I > 0.0)) return sel;
    BetaDomain dom = beta_domain(s);
    if (dom.empty) {
        sel.feasible_set_empty = true;
        return sel;
    }
    struct Cand {
        double beta;
        BetaBranch branch;
    };
    const Cand cands[] = {{b_lm, BetaBranch::betaLM},
                          {dom.beta_star1, BetaBranch::betaStar1},
                          {dom.beta_star2, BetaBranch::betaStar2}};
    bool found = false;
    double best = 0.0;
    for (const auto& c : cands) {
        if (!dom.contains(c.beta)) continue;
        double dist = std::abs(c.beta - b_lm);
        if (!found || dist < best) {
            found = true;
            best = dist;
            sel.beta = std::clamp(c.beta, 0.0, 1.0);
            sel.branch = c.branch;
        }
    }
    if (!found) {
        sel.beta = 0.0;
        sel.branch = BetaBranch::zero;
        sel.feasible_set_empty = true;
    }
    return sel;
}

}  // namespace

BetaSelection select_beta(const SideSubstitution& s, double steady_dT_Is, double steady_dT_IIs) {
    return select_with(s, beta_lm(steady_dT_Is, steady_dT_IIs));
}

BetaPair select_betas(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                      const OutletTemps& steady, const WallState& sw) {
    BetaPair b;
    b.hot = select_beta(hot_substitution(x, u, cond.aA_h, cp.theta3), u.T_h1 - sw.T_w1, steady.T_h2 - sw.T_w2);
    b.cold = select_beta(cold_substitution(x, u, cond.aA_c, cp.theta4), sw.T_w2 - u.T_c1, sw.T_w1 - steady.T_c2);
    return b;
}

BetaPair select_betas(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                      const ApproxSteady& st) {
    BetaPair b;
    b.hot = select_with(hot_substitution(x, u, cond.aA_h, cp.theta3), st.beta_lm_hot);
    b.cold = select_with(cold_substitution(x, u, cond.aA_c, cp.theta4), st.beta_lm_cold);
    return b;
}

OutletTemps approx_output(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp,
                          const BetaPair& betas) {
    double G_h = g_closed_form(hot_substitution(x, u, cond.aA_h, cp.theta3), betas.hot.beta);
    double G_c = g_closed_form(cold_substitution(x, u, cond.aA_c, cp.theta4), betas.cold.beta);
    return {G_h + x.T_w2, x.T_w1 - G_c};
}

OutletTemps approx_steady(const InletConditions& u, double kA, const CpParams& cp) {
    const double C_h = u.mdot_h * cp.theta5;
    const double C_c = u.mdot_c * cp.theta6;
    double T_h2s;
    if (std::abs(C_h / C_c - 1.0) < 1e-9) {
        T_h2s = (u.T_c1 * kA + u.T_h1 * C_h) / (kA + C_h);
    } else {
        // T_c1 + (T_c1 - T_h1)(C_c - C_h) / (C_h - C_c*xi_s) with
        // xi_s = exp(r), r = kA/C_h - kA/C_c, rearranged around expm1 so that
        // it stays accurate as the capacity ratio approaches 1.
        double r = kA / C_h - kA / C_c;
        double phi = std::expm1(r) / r;
        T_h2s = u.T_c1 + (u.T_h1 - u.T_c1) / (1.0 + kA * phi / C_h);
    }
    double T_c2s = u.T_c1 + (C_h / C_c) * (u.T_h1 - T_h2s);
    return {T_h2s, T_c2s};
}

CpParams update_cp_params(const Streams& streams, const OutletTemps& prev_outputs, const OutletTemps& prev_steady,
                          const InletConditions& u) {
    const auto& h = streams.hot;
    const auto& c = streams.cold;
    return {mean_specific_heat(h.fluid, u.T_h1, prev_outputs.T_h2, h.pressure),
            mean_specific_heat(c.fluid, u.T_c1, prev_outputs.T_c2, c.pressure),
            mean_specific_heat(h.fluid, u.T_h1, prev_steady.T_h2, h.pressure),
            mean_specific_heat(c.fluid, u.T_c1, prev_steady.T_c2, c.pressure)};
}

CpParams seed_cp_params(const Streams& streams, const InletConditions& u) {
    double cp_h = point_specific_heat(streams.hot.fluid, u.T_h1, streams.hot.pressure);
    double cp_c = point_specific_heat(streams.cold.fluid, u.T_c1, streams.cold.pressure);
    return {cp_h, cp_c, cp_h, cp_c};
}

OutletTemps refresh_steady_cp(const Streams& streams, const InletConditions& u, double kA, CpParams& cp) {
    // Fixed point of outlets -> mean cp -> outlets. Near a cp peak the plain
    // map overshoots and cycles, so each outlet gets a Wegstein step.
    auto map = [&](const OutletTemps& s) {
        cp.theta5 = mean_specific_heat(streams.hot.fluid, u.T_h1, s.T_h2, streams.hot.pressure);
        cp.theta6 = mean_specific_heat(streams.cold.fluid, u.T_c1, s.T_c2, streams.cold.pressure);
        return approx_steady(u, kA, cp);
    };
    auto wegstein = [](double x0, double g0, double x1, double g1) {
        if (x1 == x0) return g1;
        double slope = (g1 - g0) / (x1 - x0);
        double q = slope == 1.0 ? 0.0 : std::clamp(slope / (slope - 1.0), -5.0, 0.95);
        return q * x1 + (1.0 - q) * g1;
    };
    auto clamp_between = [](double x, double a, double b) { return std::clamp(x, std::min(a, b), std::max(a, b)); };

    OutletTemps x = approx_steady(u, kA, cp);
    OutletTemps gx = map(x);
    OutletTemps x_prev = x, g_prev = gx;
    for (int i = 0; i < 5; ++i) {
        double change = std::max(std::abs(gx.T_h2 - x.T_h2), std::abs(gx.T_c2 - x.T_c2));
        if (change < 1e-4) return gx;
        OutletTemps next = gx;
        if (i > 0) {
            next.T_h2 = clamp_between(wegstein(x_prev.T_h2, g_prev.T_h2, x.T_h2, gx.T_h2), u.T_h1, u.T_c1);
            next.T_c2 = clamp_between(wegstein(x_prev.T_c2, g_prev.T_c2, x.T_c2, gx.T_c2), u.T_h1, u.T_c1);
        }
        x_prev = x;
        g_prev = gx;
        x = next;
        gx = map(x);
    }
    return gx;
}

ApproxSteady approx_steady_state(const InletConditions& u, const Conductances& cond, const CpParams& cp) {
    ApproxSteady st;
    st.outlets = approx_steady(u, cond.kA(), cp);
    st.walls = steady_wall_temps(st.outlets, u, cond);
    st.beta_lm_hot = beta_lm(u.T_h1 - st.walls.T_w1, st.outlets.T_h2 - st.walls.T_w2);
    st.beta_lm_cold = beta_lm(st.walls.T_w2 - u.T_c1, st.walls.T_w1 - st.outlets.T_c2);
    return st;
}

OutletTemps approx_output(const WallState& x, const InletConditions& u, const Conductances& cond, const CpParams& cp) {
    ApproxSteady st = approx_steady_state(u, cond, cp);
    BetaPair b = select_betas(x, u, cond, cp, st);
    double G_h = g_feasible(hot_substitution(x, u, cond.aA_h, cp.theta3), b.hot.beta);
    double G_c = g_feasible(cold_substitution(x, u, cond.aA_c, cp.theta4), b.cold.beta);
    return {G_h + x.T_w2, x.T_w1 - G_c};
}

}  // namespace hxtwin
