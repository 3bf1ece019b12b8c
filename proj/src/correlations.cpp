#include "hxtwin/correlations.hpp"

#include "hxtwin/errors.hpp"

#include <cmath>

namespace hxtwin {

double alpha_A(double mdot, double cbar_p, double upsilon, const CorrelationSide& side) {
    if (!(mdot > 0.0)) throw DomainError("mass flow must be positive");
    if (!(cbar_p > 0.0)) throw DomainError("mean specific heat must be positive");
    double v = upsilon * std::pow(mdot, side.exp_mdot) * std::pow(cbar_p, side.exp_cp) + side.offset;
    if (!(v > 0.0)) throw NonPositiveConductance("correlation yields non-positive conductance");
    return v;
}

ReferenceCorrelation ReferenceCorrelation::hot_default() { return {37.0, 0.8, 1.0 / 3.0, -7.0 / 15.0, 2.0 / 3.0}; }

ReferenceCorrelation ReferenceCorrelation::cold_default() { return {2.0, 0.8, 1.0, 1.0 / 15.0, 0.0}; }

double reference_alpha_A(const ReferenceCorrelation& c, double mdot, const FluidProps& p) {
    if (!(mdot > 0.0 && p.cp > 0.0 && p.eta > 0.0)) throw DomainError("correlation inputs must be positive");
    if (c.e_lambda != 0.0 && !(p.lambda > 0.0)) throw DomainError("thermal conductivity must be positive");
    double v = c.coefficient * std::pow(mdot, c.e_mdot) * std::pow(p.cp, c.e_cp) * std::pow(p.eta, c.e_eta);
    if (c.e_lambda != 0.0) v *= std::pow(p.lambda, c.e_lambda);
    return v;
}

double reference_alpha_A(Side side, double mdot, const FluidProps& props) {
    return reference_alpha_A(side == Side::hot ? ReferenceCorrelation::hot_default()
                                               : ReferenceCorrelation::cold_default(),
                             mdot, props);
}

double series_conductance(double aA_h, double aA_c) {
    if (!(aA_h > 0.0 && aA_c > 0.0)) throw NonPositiveConductance("conductances must be positive");
    return 1.0 / (1.0 / aA_h + 1.0 / aA_c);
}

}  // namespace hxtwin
