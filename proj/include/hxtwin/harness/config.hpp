#pragma once

#include "hxtwin/correlations.hpp"
#include "hxtwin/ekf.hpp"
#include "hxtwin/fluids.hpp"
#include "hxtwin/types.hpp"
#include "hxtwin/wall_dynamics.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hxtwin {

/// Piecewise-linear function of time, held constant outside its knots.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(double constant);
    TimeSeries(std::vector<double> t, std::vector<double> v);

    double operator()(double t) const;
    bool empty() const { return t_.empty(); }

private:
    std::vector<double> t_, v_;
};

enum class Channel { T_h1, T_c1, mdot_h, mdot_c };

struct ChirpSpec {
    double f0 = 0.0;          // Hz
    double f1 = 0.5;          // Hz
    double duration = 2400.0; // s
    // Absolute amplitudes (K, kg/s) and phase offsets (rad) per channel,
    // ordered T_h1, T_c1, mdot_h, mdot_c.
    std::array<double, 4> amplitude{};
    std::array<double, 4> phase{};
};

struct StepSpec {
    Channel channel = Channel::mdot_c;
    double t_f = 0.0;        // s
    double magnitude = 0.0;  // relative change, -0.5 halves the channel
};

struct ExcitationSpec {
    enum class Kind { constant, step, chirp };
    Kind kind = Kind::constant;
    StepSpec step;
    ChirpSpec chirp;
};

/// Truth conductances: explicit time series, or the reference correlations
/// evaluated with constant mean fluid properties.
struct TruthSpec {
    enum class Kind { series, reference_correlations };
    Kind kind = Kind::series;
    TimeSeries aA_h;
    TimeSeries aA_c;
    ReferenceCorrelation hot_corr = ReferenceCorrelation::hot_default();
    ReferenceCorrelation cold_corr = ReferenceCorrelation::cold_default();
    FluidProps hot_props;
    FluidProps cold_props;

    Conductances at(double t, const InletConditions& u) const;
};

struct MonitorSpec {
    CorrelationParams corr;  // upsilon_h/c hold the initial estimates
    std::optional<double> mdot_c0;  // initial coolant-flow estimate (B/C)
    /// Variant A: coolant flow fed to the model. Empty = measured input.
    std::optional<double> mdot_c_given;
    /// Maximum evaluations of theta3/theta4 per record: the first uses the
    /// previous outputs, further passes the outputs at the current prior.
    int cp_passes = 8;
    std::optional<StreamConfig> hot;   // monitoring fluid overrides
    std::optional<StreamConfig> cold;
};

struct ScenarioConfig {
    std::string name;
    double dt = 1.0;          // s
    double duration = 0.0;    // s
    double noise_std = 0.1;   // K
    std::uint64_t seed = 1;
    double Q_design = 1.6e6;  // W

    // placeholder until parsed
    Streams streams{{FluidModel(CaloricallyPerfect{1.0}), 1.0}, {FluidModel(CaloricallyPerfect{1.0}), 1.0}};
    InletConditions nominal;
    ExcitationSpec excitation;
    TruthSpec truth;
    MonitorSpec monitor;
    EkfConfig ekf;  // ekf.wall carries theta7 and the integrator settings

    /// Monitoring streams: the truth streams with the monitor overrides.
    Streams monitor_streams() const;
    InletConditions inputs_at(double t) const;
    std::size_t record_count() const;
};

/// Parses the INI-style scenario format documented in the README. Relative
/// table paths resolve against `base_dir`. Throws ConfigError with the
/// offending line.
ScenarioConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {},
                            const std::string& source = "config");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Default tuning for the given heat capacity and design duty.
EkfConfig default_ekf_config(double theta7, double Q_design, Variant v);

}  // namespace hxtwin
