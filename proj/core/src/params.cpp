#include "magnomech/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace magnomech {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

void require_positive(double value, const char* name) {
    require_finite(value, name);
    if (value <= 0.0) {
        throw std::domain_error(std::string(name) + " must be > 0");
    }
}

void require_non_negative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) {
        throw std::domain_error(std::string(name) + " must be >= 0");
    }
}

} // namespace

void validate(const SystemParams& p) {
    require_positive(p.omega_a, "omega_a");
    require_positive(p.omega_m, "omega_m");
    require_positive(p.omega_b, "omega_b");
    require_positive(p.kappa_a, "kappa_a");
    require_positive(p.kappa_m, "kappa_m");
    require_positive(p.kappa_b, "kappa_b");
    require_positive(p.omega_d, "omega_d");
    require_non_negative(p.g_ma, "g_ma");
    require_non_negative(p.g_mb, "g_mb");
    require_finite(p.kerr_K, "kerr_K");
    require_non_negative(p.drive_power, "drive_power");
    require_non_negative(p.temperature, "temperature");
}

double drive_amplitude(double drive_power, double omega_d, double kappa_m) {
    require_non_negative(drive_power, "drive_power");
    require_positive(omega_d, "omega_d");
    require_non_negative(kappa_m, "kappa_m");
    return std::sqrt(2.0 * kappa_m * drive_power / (constants::hbar * omega_d));
}

double thermal_occupation(double omega_b, double temperature) {
    require_positive(omega_b, "omega_b");
    require_non_negative(temperature, "temperature");
    if (temperature == 0.0) {
        return 0.0;
    }
    const double x = constants::hbar * omega_b / (constants::k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

DerivedParams derive(const SystemParams& p) {
    validate(p);
    DerivedParams d;
    d.sys = p;
    d.delta_a = p.omega_a - p.omega_d;
    d.delta_m = p.omega_m - p.omega_d;
    d.eta = p.g_ma * p.g_ma / (d.delta_a * d.delta_a + p.kappa_a * p.kappa_a);
    d.zeta = p.g_mb * p.g_mb / (p.omega_b * p.omega_b + p.kappa_b * p.kappa_b);
    d.kerr_eff = 2.0 * (p.kerr_K - d.zeta * p.omega_b);
    d.delta_0 = d.delta_m - d.eta * d.delta_a;
    d.kappa_0 = p.kappa_m + d.eta * p.kappa_a;
    d.drive_amp = drive_amplitude(p.drive_power, p.omega_d, p.kappa_m);
    d.n_th = thermal_occupation(p.omega_b, p.temperature);
    d.tau = constants::two_pi / p.omega_b;
    return d;
}

SystemParams reference_params() {
    using constants::two_pi;
    SystemParams p;
    p.omega_a = two_pi * 10e9;
    p.omega_b = two_pi * 10e6;
    p.kappa_a = two_pi * 1e6;
    p.kappa_m = two_pi * 1e6;
    p.kappa_b = two_pi * 100.0;
    p.g_ma = two_pi * 3.2e6;
    p.g_mb = two_pi * 1e-3;
    p.kerr_K = two_pi * 6.5e-9;
    // drive 0.9 omega_b above the cavity, magnon 0.8 omega_b below the drive
    p.omega_d = p.omega_a + 0.9 * p.omega_b;
    p.omega_m = p.omega_d - 0.8 * p.omega_b;
    p.drive_power = 50e-3;
    p.temperature = 10e-3;
    return p;
}

} // namespace magnomech
