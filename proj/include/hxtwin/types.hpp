#pragma once

#include "hxtwin/fluids.hpp"

namespace hxtwin {

/// Wall temperatures at the intake (1) and outlet (2) cross-section, K.
struct WallState {
    double T_w1 = 0.0;
    double T_w2 = 0.0;
};

/// Model input vector u: intake temperatures (K) and mass flows (kg/s).
struct InletConditions {
    double T_h1 = 0.0;
    double T_c1 = 0.0;
    double mdot_h = 0.0;
    double mdot_c = 0.0;
};

/// Model output vector y: outlet temperatures, K.
struct OutletTemps {
    double T_h2 = 0.0;
    double T_c2 = 0.0;
};

/// Overall convection conductances of both sides, W/K.
struct Conductances {
    double aA_h = 0.0;
    double aA_c = 0.0;

    /// Serial connection of the two convective resistances.
    double kA() const { return 1.0 / (1.0 / aA_h + 1.0 / aA_c); }
};

struct Streams {
    StreamConfig hot;
    StreamConfig cold;
};

/// Throws DomainError unless both mass flows are positive and all values finite.
void validate(const InletConditions& u);
/// Throws NonPositiveConductance unless both conductances are positive and finite.
void validate(const Conductances& c);

}  // namespace hxtwin
