#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace hxtwin {

/// Constant specific heat, h = cp * T.
struct CaloricallyPerfect {
    double cp = 0.0;  // J/(kg K)
};

/// Enthalpy depends on temperature only, through a temperature-dependent
/// specific heat given either as a polynomial in T or as a piecewise-linear
/// table. Enthalpy is the exact integral of cp.
class ThermallyPerfect {
public:
    /// cp(T) = sum_i coeffs[i] * T^i, valid on [T_min, T_max].
    static ThermallyPerfect polynomial(std::vector<double> coeffs, double T_min, double T_max);
    /// Piecewise-linear cp(T) through the given nodes.
    static ThermallyPerfect table(std::vector<double> T, std::vector<double> cp);

    double enthalpy(double T) const;
    double specific_heat(double T) const;
    double T_min() const { return T_min_; }
    double T_max() const { return T_max_; }
    bool is_polynomial() const { return !coeffs_.empty(); }
    const std::vector<double>& coefficients() const { return coeffs_; }
    const std::vector<double>& table_T() const { return T_; }
    const std::vector<double>& table_cp() const { return cp_; }

private:
    ThermallyPerfect() = default;
    void check_range(double T) const;

    std::vector<double> coeffs_;
    std::vector<double> T_, cp_, h_nodes_;
    double T_min_ = 0.0;
    double T_max_ = 0.0;
};

/// Specific enthalpy on a rectangular (T, p) grid, bilinear in between.
/// Values are stored row-major with T as the outer index.
class TabulatedFluid {
public:
    TabulatedFluid(std::vector<double> T_axis, std::vector<double> p_axis, std::vector<double> h,
                   std::string name = {});

    double enthalpy(double T, double p) const;
    const std::vector<double>& T_axis() const { return T_; }
    const std::vector<double>& p_axis() const { return p_; }
    double node(std::size_t iT, std::size_t ip) const { return h_[iT * p_.size() + ip]; }
    const std::string& name() const { return name_; }

private:
    std::vector<double> T_, p_, h_;
    std::string name_;
};

/// Pluggable specific-enthalpy model h(T, p). Immutable after construction.
class FluidModel {
public:
    using Variant = std::variant<CaloricallyPerfect, ThermallyPerfect, TabulatedFluid>;

    FluidModel(CaloricallyPerfect m);
    FluidModel(ThermallyPerfect m);
    FluidModel(TabulatedFluid m);

    /// J/kg. Throws OutOfRange outside the validity hull.
    double enthalpy(double T, double p) const;
    bool contains(double T, double p) const;
    const Variant& variant() const { return model_; }
    std::string description() const;

private:
    Variant model_;
};

/// A fluid stream at its (fixed) pressure in Pa.
struct StreamConfig {
    FluidModel fluid;
    double pressure = 0.0;
};

void validate(const StreamConfig& s);

double enthalpy(const FluidModel& model, double T, double p);

/// Centered finite difference with a 0.01 K span, shifted inward near the
/// edges of a bounded hull. Exact cp for calorically perfect fluids.
double point_specific_heat(const FluidModel& model, double T, double p);

/// Secant (h(T_to) - h(T_from)) / (T_to - T_from). Falls back to
/// point_specific_heat when |T_to - T_from| < 1e-6 K.
double mean_specific_heat(const FluidModel& model, double T_from, double T_to, double p);

/// Parses the plain-text fluid table format (see README).
/// Throws ParseError (with line) or NonMonotonicAxis.
FluidModel load_fluid_table(std::istream& in);
FluidModel load_fluid_table(const std::filesystem::path& path);
void write_fluid_table(std::ostream& out, const TabulatedFluid& table);

}  // namespace hxtwin
