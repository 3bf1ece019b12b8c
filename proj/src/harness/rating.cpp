#include "hxtwin/harness/rating.hpp"

#include "hxtwin/errors.hpp"
#include "hxtwin/means.hpp"

#include <cmath>

namespace hxtwin {

std::vector<RatingPoint> model_free_rating(const std::vector<TelemetryRecord>& tel, const StreamConfig& hot) {
    std::vector<RatingPoint> out;
    out.reserve(tel.size());
    for (const auto& r : tel) {
        RatingPoint pt;
        pt.t = r.t;
        try {
            double H_h = r.u.mdot_h * (hot.fluid.enthalpy(r.y_meas.T_h2, hot.pressure) -
                                       hot.fluid.enthalpy(r.u.T_h1, hot.pressure));
            double dTm = heat_rate(r.u.T_h1 - r.y_meas.T_c2, r.y_meas.T_h2 - r.u.T_c1, 1.0);
            if (dTm > 0.0 && std::isfinite(H_h)) {
                pt.kA = std::abs(H_h) / dTm;
            } else {
                pt.flagged = true;
            }
        } catch (const OutOfRange&) {
            pt.flagged = true;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace hxtwin
