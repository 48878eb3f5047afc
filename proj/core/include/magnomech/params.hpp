#pragma once

#include <numbers>

namespace magnomech {

namespace constants {
/// CODATA 2018 reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;
/// CODATA 2018 Boltzmann constant [J/K].
inline constexpr double k_boltzmann = 1.380649e-23;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace constants

/// Physical inputs of the driven three-mode system (cavity a, magnon m,
/// phonon b). All frequencies, rates and couplings are angular [rad/s];
/// configuration files may instead carry frequency/2pi values in Hz, which
/// the loader converts (see io.hpp).
struct SystemParams {
    double omega_a = 0.0;      ///< cavity resonance [rad/s]
    double omega_m = 0.0;      ///< magnon resonance [rad/s]
    double omega_b = 0.0;      ///< phonon resonance [rad/s]
    double kappa_a = 0.0;      ///< cavity decay rate [rad/s]
    double kappa_m = 0.0;      ///< magnon decay rate [rad/s]
    double kappa_b = 0.0;      ///< phonon decay rate [rad/s]
    double g_ma = 0.0;         ///< magnon-photon coupling [rad/s]
    double g_mb = 0.0;         ///< magnomechanical coupling [rad/s]
    double kerr_K = 0.0;       ///< Kerr coefficient K [rad/s]
    double omega_d = 0.0;      ///< drive frequency [rad/s]
    double drive_power = 0.0;  ///< drive power P_d [W]
    double temperature = 0.0;  ///< bath temperature [K]
};

/// Throws std::domain_error naming the offending field if params violate the
/// basic invariants (positive frequencies/rates, non-negative power and
/// temperature, finite values).
void validate(const SystemParams& params);

/// Effective quantities computed once per parameter point.
struct DerivedParams {
    SystemParams sys;          ///< the inputs these values were derived from
    double delta_a = 0.0;      ///< cavity detuning omega_a - omega_d [rad/s]
    double delta_m = 0.0;      ///< magnon detuning omega_m - omega_d [rad/s]
    double eta = 0.0;          ///< g_ma^2 / (delta_a^2 + kappa_a^2)
    double zeta = 0.0;         ///< g_mb^2 / (omega_b^2 + kappa_b^2)
    double kerr_eff = 0.0;     ///< K' = 2 (K - zeta omega_b) [rad/s]
    double delta_0 = 0.0;      ///< delta_m - eta delta_a [rad/s]
    double kappa_0 = 0.0;      ///< kappa_m + eta kappa_a [rad/s]
    double drive_amp = 0.0;    ///< Omega = sqrt(2 kappa_m P_d / (hbar omega_d))
    double n_th = 0.0;         ///< thermal phonon occupation at temperature
    double tau = 0.0;          ///< mechanical period 2 pi / omega_b [s]
};

/// Drive amplitude Omega = sqrt(2 kappa_m P_d / (hbar omega_d)).
/// Throws std::domain_error on negative or non-finite input.
double drive_amplitude(double drive_power, double omega_d, double kappa_m);

/// Bose-Einstein occupation [exp(hbar omega_b / k_B T) - 1]^-1; exactly 0 at T = 0.
double thermal_occupation(double omega_b, double temperature);

/// Computes all derived quantities. Pure and deterministic.
DerivedParams derive(const SystemParams& params);

/// Canonical microwave-cavity / YIG-sphere parameter set used by the bundled
/// configuration and throughout the test suite: omega_a/2pi = 10 GHz,
/// omega_b/2pi = 10 MHz, kappa_a = kappa_m = 2pi x 1 MHz, kappa_b = 2pi x 100 Hz,
/// g_ma = 2pi x 3.2 MHz, g_mb = 2pi x 1 mHz, K = 2pi x 6.5 nHz,
/// delta_a = -0.9 omega_b, delta_m = -0.8 omega_b, P_d = 50 mW, T = 10 mK.
SystemParams reference_params();

} // namespace magnomech
