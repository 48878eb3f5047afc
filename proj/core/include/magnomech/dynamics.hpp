#pragma once

#include <vector>

#include "magnomech/stability.hpp"

namespace magnomech {

/// Tolerances and output grid for the adaptive integrators.
struct IntegratorOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-6;
    double samples_per_tau = 32.0;  ///< output grid density
    bool check_physicality = true;  ///< covariance runs only
};

/// Time-sampled mean-field (and optionally covariance) evolution.
struct Trajectory {
    std::vector<double> times;        ///< strictly increasing [s]
    std::vector<MeanState> states;
    std::vector<Matrix6d> covariances; ///< empty unless co-integrated
    double tau = 0.0;                 ///< reporting unit 2 pi / omega_b [s]
    bool truncated = false;           ///< integration stopped early
};

/// Integrates the six mean-field ODEs over [0, t_final] with an adaptive
/// embedded Runge-Kutta pair (order 5), dense output on a uniform grid.
/// t_final <= 0 yields an empty trajectory. Throws NumericError on step-size
/// underflow (stiffness) with a diagnostic message.
Trajectory integrate_mean_field(const DerivedParams& dp, const MeanState& initial,
                                double t_final, const IntegratorOptions& opts = {});

/// Default initial covariance: cavity and magnon in coherent (vacuum
/// fluctuation) states, phonon thermal at n_th.
Matrix6d coherent_thermal_covariance(const DerivedParams& dp);

/// Co-integrates the mean field with the 21 independent covariance entries of
///   dV/dt = A(t) V + V A(t)^T + D,
/// rebuilding A(t) from the instantaneous mean state. Covariance samples are
/// symmetric by construction; each output sample is checked against the
/// uncertainty bound (symplectic eigenvalues >= 1/2 - 1e-9) unless disabled.
Trajectory integrate_covariance(const DerivedParams& dp, const MeanState& initial_mean,
                                const Matrix6d& v0, double t_final,
                                const IntegratorOptions& opts = {});

struct LimitCycleReport {
    bool periodic = false;
    double period = 0.0;      ///< [s]
    double amplitude = 0.0;   ///< peak-to-peak of |m|^2 after the transient
    double transient_cut = 0.0;
};

/// Detects a limit cycle in |m(t)|^2: discards t < transient_cut, estimates the
/// period from the autocorrelation peak, and confirms it by the spacing of
/// successive maxima (relative spread < detect_tol) plus amplitude
/// stationarity between window halves. Throws std::invalid_argument if the
/// trajectory is shorter than twice the transient cut.
LimitCycleReport detect_limit_cycle(const Trajectory& traj, double transient_cut,
                                    double detect_tol = 0.02);

struct LyapunovReport {
    double lambda_max = 0.0;  ///< [1/s]
    bool converged = false;
};

/// Maximal Lyapunov exponent by tangent-vector propagation along the
/// mean-field trajectory with periodic renormalization. Convergence requires
/// the running average to move by less than max(5% relative, 1/horizon) over
/// the last quarter of the horizon.
LyapunovReport max_lyapunov_exponent(const DerivedParams& dp, const MeanState& initial,
                                     double horizon, double renorm_interval);

/// The documented instability kick: displaces m along +X by rel_eps * |m|.
MeanState perturbed(const MeanState& state, double rel_eps = 1e-3);

} // namespace magnomech
