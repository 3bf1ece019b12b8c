#pragma once

#include "hxtwin/types.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace hxtwin::test {

inline std::string source_path(const std::string& rel) { return std::string(HXTWIN_SOURCE_DIR) + "/" + rel; }

inline Streams constant_streams(double cp_h, double cp_c, double p_h = 1e7, double p_c = 4e5) {
    return {{FluidModel(CaloricallyPerfect{cp_h}), p_h}, {FluidModel(CaloricallyPerfect{cp_c}), p_c}};
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    /// Admissible cooling operating point with both streams and conductances.
    InletConditions inputs() {
        double T_c1 = uniform(260.0, 330.0);
        return {T_c1 + uniform(5.0, 120.0), T_c1, uniform(1.0, 60.0), uniform(1.0, 60.0)};
    }
    Conductances conductances() { return {uniform(1e3, 2e5), uniform(1e3, 2e5)}; }

private:
    std::mt19937_64 eng_;
};

}  // namespace hxtwin::test
