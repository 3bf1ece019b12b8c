#pragma once

#include <cmath>
#include <functional>

namespace hxtwin {

struct RootOptions {
    double x_tol = 1e-12;  // bracket width, K
    double f_tol = 1e-8;   // residual magnitude, W
    int max_iter = 200;
};

struct RootResult {
    double x = 0.0;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Root of a strictly increasing function on [lo, hi] given endpoint values
/// f_lo <= 0 <= f_hi. Illinois-modified regula falsi, falling back to a
/// bisection step whenever the bracket fails to halve over two iterations.
RootResult solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi,
                           const RootOptions& opts = {});

}  // namespace hxtwin
