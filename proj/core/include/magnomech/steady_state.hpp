#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "magnomech/params.hpp"

namespace magnomech {

/// Semiclassical amplitudes of the three modes (quanta^1/2, dimensionless).
struct MeanState {
    std::complex<double> a{0.0, 0.0};
    std::complex<double> m{0.0, 0.0};
    std::complex<double> b{0.0, 0.0};

    /// Mean magnon number I = |m|^2.
    double intensity() const { return std::norm(m); }
};

/// Real non-negative roots of the magnon-intensity cubic
///   K'^2 I^3 + 2 delta_0 K' I^2 + (delta_0^2 + kappa_0^2) I - Omega^2 = 0.
struct CubicSolution {
    std::vector<double> roots;      ///< ascending, deduplicated
    double discriminant_lhs = 0.0;  ///< three-root criterion left-hand side
    bool has_three_roots = false;   ///< discriminant_lhs < 0
    bool degenerate = false;        ///< merged roots or discriminant within tolerance of 0
};

/// Solves the intensity cubic. For K' = 0 returns the single linear-response
/// root Omega^2 / (delta_0^2 + kappa_0^2). Near-coincident roots are merged
/// and flagged degenerate.
CubicSolution magnon_intensities(const DerivedParams& dp);

/// Reconstructs the fixed-point amplitudes from an intensity root:
///   m = -i Omega / [(delta_0 + K' I) - i kappa_0],
/// with a and b back-substituted. Throws std::domain_error if I is not a root
/// (|m|^2 residual above tolerance).
MeanState mean_state_from_intensity(const DerivedParams& dp, double intensity);

/// Saddle-node intensities where dOmega/dI = 0 (branch switching points).
struct SwitchingPoints {
    double lower = 0.0;  ///< I_-
    double upper = 0.0;  ///< I_+; equals lower when the pair is degenerate
};

/// The two real roots of 3 K'^2 I^2 + 4 delta_0 K' I + (delta_0^2 + kappa_0^2) = 0
/// when delta_0^2 > 3 kappa_0^2 and both are positive; nullopt otherwise.
/// Throws std::domain_error("no Kerr turning points") when K' = 0.
std::optional<SwitchingPoints> switching_points(const DerivedParams& dp);

/// Diagnostic critical drive amplitude sqrt(-8 delta_0^3 / (27 K')).
/// Note this closed form does not coincide with the discriminant-based onset
/// of the three-root window; it is exposed as a diagnostic only.
/// Throws std::domain_error("bistability-sign condition violated") when the
/// radicand is negative (requires delta_0 / K' < 0); returns 0 for delta_0 = 0.
double critical_drive(const DerivedParams& dp);

/// Power interval with three real intensity roots.
struct PowerWindow {
    double p_low = 0.0;   ///< [W]
    double p_high = 0.0;  ///< [W]
};

/// Solves the three-root criterion as a quadratic in Omega^2 and converts the
/// roots to drive power. Returns the window intersected with [p_min, p_max],
/// or nullopt when no (positive) window exists in range.
std::optional<PowerWindow> bistable_power_window(const SystemParams& params,
                                                 double p_min, double p_max);

} // namespace magnomech
