#pragma once

#include "hxtwin/fluids.hpp"

namespace hxtwin {

/// Smooth CO2-like stand-in for a real-gas property database near the
/// pseudo-critical line: cp = 1200 + A / (1 + ((T - Tpc)/w)^2) J/(kg K) with
/// Tpc, A and w depending on pressure. Not an equation of state.
double co2_like_enthalpy(double T, double p);
double co2_like_cp(double T, double p);

/// The above sampled on T = 260..460 K (0.5 K) x p = 8..12 MPa (0.5 MPa).
TabulatedFluid make_co2_like_table();

}  // namespace hxtwin
