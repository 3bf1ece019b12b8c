#include "hxtwin/means.hpp"

#include "hxtwin/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace hxtwin {

MeanDomainFlags classify(double z1, double z2) { return {z1 > 0.0 && z2 > 0.0 && z1 != z2}; }

double arith_mean(double z1, double z2) { return 0.5 * (z1 + z2); }

double geom_mean(double z1, double z2) {
    double prod = z1 * z2;
    if (prod < 0.0) throw DomainError("geometric mean needs z1*z2 >= 0");
    return std::sqrt(prod);
}

double log_mean(double z1, double z2) {
    if (!classify(z1, z2).in_lm_domain) {
        throw DomainError("logarithmic mean undefined for (" + std::to_string(z1) + ", " + std::to_string(z2) + ")");
    }
    if (z1 < z2) std::swap(z1, z2);  // symmetric by construction
    double d = (z1 - z2) / z2;
    if (d < 1e-8) {
        // d / ln(1 + d) = 1 + d/2 - d^2/12 + d^3/24 - ...
        return z2 * (1.0 + d * (0.5 + d * (-1.0 / 12.0 + d / 24.0)));
    }
    return (z1 - z2) / std::log1p(d);
}

double weighted_mean(double z1, double z2, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("weighting parameter outside [0, 1]");
    if (beta == 0.0) return arith_mean(z1, z2);
    return beta * geom_mean(z1, z2) + (1.0 - beta) * arith_mean(z1, z2);
}

double heat_rate(double z1, double z2, double z3) {
    if (classify(z1, z2).in_lm_domain) return z3 * log_mean(z1, z2);
    return z3 * arith_mean(z1, z2);
}

}  // namespace hxtwin
