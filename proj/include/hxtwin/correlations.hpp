#pragma once

#include <array>

namespace hxtwin {

/// Exponents on mass flow and mean specific heat plus an additive offset
/// (W/K) of one side of the monitored power-law correlation.
struct CorrelationSide {
    double exp_mdot = 0.0;
    double exp_cp = 0.0;
    double offset = 0.0;
};

/// theta_hc = (h1, h2, h3, c1, c2, c3) with the upsilon factors.
struct CorrelationParams {
    double upsilon_h = 0.0;  // W/K
    double upsilon_c = 0.0;  // W/K
    std::array<double, 6> theta_hc{};

    CorrelationSide hot() const { return {theta_hc[0], theta_hc[1], theta_hc[2]}; }
    CorrelationSide cold() const { return {theta_hc[3], theta_hc[4], theta_hc[5]}; }
};

/// upsilon * mdot^e1 * cbar_p^e2 + offset, all factors taken as their SI
/// magnitudes. Throws DomainError for non-positive mdot or cbar_p and
/// NonPositiveConductance when the result is not positive.
double alpha_A(double mdot, double cbar_p, double upsilon, const CorrelationSide& side);

/// Mean fluid properties consumed by the reference-truth correlations (SI).
struct FluidProps {
    double cp = 0.0;      // J/(kg K)
    double eta = 0.0;     // Pa s
    double lambda = 0.0;  // W/(m K)
};

/// coefficient * mdot^e_mdot * cp^e_cp * eta^e_eta * lambda^e_lambda.
///
/// The underlying form is Nu_m = f(Re_m, Pr_m) with Nu_m = alpha_m L / lambda_m,
/// Re_m = rho_m w_m L / eta_m, Pr_m = eta_m c_pm / lambda_m. With
/// Nu = c1 Re^E1 Pr^E2 and fixed geometry the product collapses to the power
/// law below; the general f is not executable here.
struct ReferenceCorrelation {
    double coefficient = 0.0;  // W/K
    double e_mdot = 0.0;
    double e_cp = 0.0;
    double e_eta = 0.0;
    double e_lambda = 0.0;

    static ReferenceCorrelation hot_default();   // 37 m^(4/5) cp^(1/3) eta^(-7/15) lambda^(2/3)
    static ReferenceCorrelation cold_default();  // 2 m^(4/5) cp eta^(1/15)
};

enum class Side { hot, cold };

double reference_alpha_A(const ReferenceCorrelation& corr, double mdot, const FluidProps& props);
double reference_alpha_A(Side side, double mdot, const FluidProps& props);

/// Serial connection of two convective conductances.
double series_conductance(double aA_h, double aA_c);

}  // namespace hxtwin
