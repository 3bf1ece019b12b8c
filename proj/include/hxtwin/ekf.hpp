#pragma once

#include "hxtwin/approx_model.hpp"
#include "hxtwin/correlations.hpp"
#include "hxtwin/types.hpp"
#include "hxtwin/wall_dynamics.hpp"

#include <Eigen/Dense>

namespace hxtwin {

/// A: walls + upsilon with a given coolant flow. B: coolant flow estimated as
/// well. C: as B, but only the hot outlet is measured.
enum class Variant { A, B, C };

const char* to_string(Variant v);
/// Throws ConfigError for anything but "A", "B", "C".
Variant parse_variant(const std::string& s);

struct EkfConfig {
    Eigen::Matrix2d Rx = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d Rupsilon = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d Ry = Eigen::Matrix2d::Zero();
    double Rmdotc = 0.0;
    Variant variant = Variant::A;
    double jacobian_step = 1e-6;   // relative
    double jacobian_floor = 1e-8;  // absolute, per component
    WallDynamicsConfig wall;

    int state_dim() const { return variant == Variant::A ? 4 : 5; }
    int meas_dim() const { return variant == Variant::C ? 1 : 2; }
};

/// Throws ConfigError for non-symmetric or indefinite densities.
void validate(const EkfConfig& cfg);

/// Augmented estimate (T_w1, T_w2, upsilon_h, upsilon_c [, mdot_c]).
struct EkfState {
    Eigen::VectorXd x;
    Eigen::MatrixXd P;
    double t = 0.0;
};

/// Known quantities over one filter step.
struct EkfContext {
    InletConditions u;  // mdot_c is used by variant A only
    CpParams cp;
    CorrelationSide hot_corr;
    CorrelationSide cold_corr;
};

constexpr double kUpsilonFloor = 1.0;   // W/K
constexpr double kMdotCFloor = 1e-3;    // kg/s

/// Inputs and conductances implied by an augmented state. Transient
/// conductances use theta3/theta4 as mean specific heat, steady ones
/// theta5/theta6. `floored` reports an active upsilon or flow floor.
struct MappedState {
    WallState x;
    InletConditions u;
    Conductances cond;
    Conductances cond_steady;
    bool floored = false;
};
MappedState map_state(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);

Eigen::VectorXd f_aug(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);
/// Predicted measurement, dimension cfg.meas_dim().
Eigen::VectorXd g_aug(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);
/// Both outlets regardless of variant.
OutletTemps g_full(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);

struct Jacobians {
    Eigen::MatrixXd F;
    Eigen::MatrixXd H;
};
/// Central differences with step max(jacobian_step*|x_i|, jacobian_floor).
Jacobians jacobians(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);
Eigen::MatrixXd jacobian_F(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);
Eigen::MatrixXd jacobian_H(const Eigen::VectorXd& xa, const EkfContext& ctx, const EkfConfig& cfg);

/// blockdiag(Rx, Rupsilon [, Rmdotc]).
Eigen::MatrixXd process_density(const EkfConfig& cfg);

/// x = x0, P = 1 s * process_density. Throws DimensionMismatch.
EkfState ekf_init(const Eigen::VectorXd& x0, const EkfConfig& cfg, double t0 = 0.0);

/// Joint RK4 integration of the estimate and of dP/dt = FP + PF^T + R over
/// dt, with F re-evaluated at every stage. dt == 0 is the identity.
EkfState predict(const EkfState& s, const EkfContext& ctx, const EkfConfig& cfg, double dt);

struct UpdateResult {
    EkfState state;
    Eigen::VectorXd innovation;  // y - g(x_prior)
    Eigen::VectorXd y_pred;
    Eigen::MatrixXd K;
};

/// Discrete update with measurement noise Ry/dt. Throws DimensionMismatch or
/// SingularInnovationCovariance.
UpdateResult update(const EkfState& s, const Eigen::VectorXd& y, const EkfContext& ctx, const EkfConfig& cfg,
                    double dt);

/// Overall conductance of the estimate via the power-law correlation and the
/// serial-resistance formula, with transient mean specific heats.
double estimate_kA(const EkfState& s, const EkfContext& ctx, const EkfConfig& cfg);

}  // namespace hxtwin
