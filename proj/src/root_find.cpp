#include "hxtwin/root_find.hpp"

#include <utility>

namespace hxtwin {

RootResult solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi,
                           const RootOptions& opts) {
    RootResult r;
    if (f_lo == 0.0) return {lo, 0.0, 0, true};
    if (f_hi == 0.0) return {hi, 0.0, 0, true};

    int side = 0;  // which endpoint was retained last: -1 lo, +1 hi
    double width_two_ago = hi - lo;
    double width_one_ago = hi - lo;
    double best_x = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    double best_f = std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi;

    for (int it = 1; it <= opts.max_iter; ++it) {
        r.iterations = it;
        double width = hi - lo;
        double x;
        if (width > 0.5 * width_two_ago) {
            x = 0.5 * (lo + hi);
        } else {
            x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        }
        width_two_ago = width_one_ago;
        width_one_ago = width;

        double fx = f(x);
        if (std::abs(fx) < std::abs(best_f)) {
            best_x = x;
            best_f = fx;
        }
        if (std::abs(fx) <= opts.f_tol) return {x, fx, it, true};

        if (fx < 0.0) {
            lo = x;
            f_lo = fx;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if (side == +1) f_lo *= 0.5;
            side = +1;
        }
        if (hi - lo <= opts.x_tol) {
            r.converged = true;
            break;
        }
    }
    r.x = best_x;
    r.f = best_f;
    return r;
}

}  // namespace hxtwin
