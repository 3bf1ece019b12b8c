#pragma once

namespace hxtwin {

/// Membership in the log-mean domain L: z1 > 0, z2 > 0, z1 != z2.
struct MeanDomainFlags {
    bool in_lm_domain = false;
};

MeanDomainFlags classify(double z1, double z2);

double arith_mean(double z1, double z2);
/// sqrt(z1*z2); DomainError when z1*z2 < 0.
double geom_mean(double z1, double z2);
/// (z1 - z2) / ln(z1/z2) on L, DomainError elsewhere. Uses a series
/// expansion when |z1/z2 - 1| < 1e-8.
double log_mean(double z1, double z2);
/// beta * GM + (1 - beta) * AM with beta in [0, 1]. beta == 0 reduces to
/// the arithmetic mean for any sign pattern.
double weighted_mean(double z1, double z2, double beta);

/// Unrestricted heat rate: z3 * LM(z1, z2) on L, z3 * AM(z1, z2) otherwise.
double heat_rate(double z1, double z2, double z3);

}  // namespace hxtwin
