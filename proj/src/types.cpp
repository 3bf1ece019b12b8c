#include "hxtwin/types.hpp"

#include "hxtwin/errors.hpp"

#include <cmath>

namespace hxtwin {

void validate(const InletConditions& u) {
    if (!std::isfinite(u.T_h1) || !std::isfinite(u.T_c1)) throw DomainError("intake temperatures must be finite");
    if (!(u.mdot_h > 0.0) || !(u.mdot_c > 0.0)) throw DomainError("mass flows must be positive");
}

void validate(const Conductances& c) {
    if (!(c.aA_h > 0.0) || !(c.aA_c > 0.0) || !std::isfinite(c.aA_h) || !std::isfinite(c.aA_c))
        throw NonPositiveConductance("convection conductances must be positive");
}

}  // namespace hxtwin
