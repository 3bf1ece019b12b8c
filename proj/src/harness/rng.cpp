#include "hxtwin/harness/rng.hpp"

#include <cmath>
#include <numbers>

namespace hxtwin {

double GaussianRng::uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform()));
    double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

}  // namespace hxtwin
