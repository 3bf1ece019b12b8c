#include "hxtwin/harness/co2_table.hpp"

#include <cmath>

namespace hxtwin {

namespace {

struct Shape {
    double Tpc, A, w;
};

Shape shape(double p) {
    return {304.13 + 5.3e-6 * (p - 7.377e6), 11500.0 * std::pow(1e7 / p, 1.5), 12.0 * (p / 1e7)};
}

}  // namespace

double co2_like_enthalpy(double T, double p) {
    Shape s = shape(p);
    return 1200.0 * T + s.A * s.w * std::atan((T - s.Tpc) / s.w);
}

double co2_like_cp(double T, double p) {
    Shape s = shape(p);
    double z = (T - s.Tpc) / s.w;
    return 1200.0 + s.A / (1.0 + z * z);
}

TabulatedFluid make_co2_like_table() {
    std::vector<double> T, p, h;
    for (int i = 0; i <= 400; ++i) T.push_back(260.0 + 0.5 * i);
    for (int j = 0; j <= 8; ++j) p.push_back(8e6 + 5e5 * j);
    h.reserve(T.size() * p.size());
    for (double Ti : T)
        for (double pj : p) h.push_back(co2_like_enthalpy(Ti, pj));
    return TabulatedFluid(T, p, h, "co2_like");
}

}  // namespace hxtwin
