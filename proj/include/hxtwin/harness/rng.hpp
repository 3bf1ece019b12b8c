#pragma once

#include <cstdint>
#include <random>

namespace hxtwin {

/// Portable Gaussian source: mt19937_64 (fully specified by the standard)
/// feeding an explicit Box-Muller transform, so the same seed yields the same
/// sequence with any conforming standard library. std::normal_distribution
/// is avoided because its algorithm is implementation-defined.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on (0, 1] with 53 random bits.
    double uniform();
    double normal();
    double normal(double mean, double std) { return mean + std * normal(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hxtwin
