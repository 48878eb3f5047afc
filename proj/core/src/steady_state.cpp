#include "magnomech/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr double kResidualTol = 1e-8;   // residual acceptance, relative to Omega^2
constexpr double kImagTol = 1e-8;       // |Im|/|Re| for a companion root to count as real
constexpr double kMergeTol = 1e-7;      // relative root-merge (degeneracy) tolerance
constexpr double kDiscTol = 1e-8;       // discriminant boundary band, relative to term scale

double cubic_residual(const DerivedParams& dp, double intensity) {
    const double kp = dp.kerr_eff;
    const double d0 = dp.delta_0;
    const double k0 = dp.kappa_0;
    return ((kp * intensity + 2.0 * d0) * kp * intensity + (d0 * d0 + k0 * k0)) * intensity
           - dp.drive_amp * dp.drive_amp;
}

} // namespace

CubicSolution magnon_intensities(const DerivedParams& dp) {
    const double kp = dp.kerr_eff;
    const double d0 = dp.delta_0;
    const double k0 = dp.kappa_0;
    const double om2 = dp.drive_amp * dp.drive_amp;
    if (!(dp.drive_amp >= 0.0)) {
        throw std::domain_error("drive_amp must be >= 0");
    }

    CubicSolution sol;
    {
        const double t1 = 27.0 * kp * kp * om2 * om2;
        const double t2 = 4.0 * d0 * kp * om2 * (d0 * d0 + 9.0 * k0 * k0);
        const double t3 = 4.0 * k0 * k0 * (d0 * d0 + k0 * k0) * (d0 * d0 + k0 * k0);
        sol.discriminant_lhs = t1 + t2 + t3;
        sol.has_three_roots = sol.discriminant_lhs < 0.0;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        if (scale > 0.0 && std::abs(sol.discriminant_lhs) < kDiscTol * scale) {
            sol.degenerate = true;
        }
    }

    if (kp == 0.0) {
        sol.roots.push_back(om2 / (d0 * d0 + k0 * k0));
        return sol;
    }

    // Balance the coefficients (they span ~30 orders of magnitude in SI units):
    // substituting x = K' I / kappa_0 gives the monic cubic
    //   x^3 + 2 (d0/k0) x^2 + ((d0^2 + k0^2)/k0^2) x - Omega^2 K' / k0^3 = 0
    // with O(1)-O(10) coefficients, solved via its companion matrix.
    const double c2 = 2.0 * d0 / k0;
    const double c1 = (d0 * d0 + k0 * k0) / (k0 * k0);
    const double c0 = -om2 * kp / (k0 * k0 * k0);

    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(0, 2) = -c0;
    companion(1, 2) = -c1;
    companion(2, 2) = -c2;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;

    Eigen::EigenSolver<Eigen::Matrix3d> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NumericError("companion-matrix eigensolver failed");
    }

    const double x_scale = std::abs(c2) + std::sqrt(std::abs(c1)) + std::cbrt(std::abs(c0)) + 1.0;
    std::vector<double> roots;
    for (int k = 0; k < 3; ++k) {
        const std::complex<double> x = es.eigenvalues()(k);
        if (std::abs(x.imag()) > kImagTol * std::max(std::abs(x.real()), x_scale)) {
            continue;
        }
        double intensity = x.real() * k0 / kp;
        if (intensity < 0.0) {
            // companion rounding can push an exact zero slightly negative
            if (intensity > -kResidualTol * x_scale * k0 / std::abs(kp)) {
                intensity = 0.0;
            } else {
                continue;
            }
        }
        if (om2 > 0.0 && std::abs(cubic_residual(dp, intensity)) > kResidualTol * om2) {
            continue;
        }
        roots.push_back(intensity);
    }
    std::sort(roots.begin(), roots.end());

    // merge near-coincident roots and flag the solution degenerate
    for (double r : roots) {
        if (!sol.roots.empty()) {
            const double prev = sol.roots.back();
            if (r - prev <= kMergeTol * std::max(r, 1.0)) {
                sol.degenerate = true;
                continue;
            }
        }
        sol.roots.push_back(r);
    }
    return sol;
}

MeanState mean_state_from_intensity(const DerivedParams& dp, double intensity) {
    if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
        throw std::domain_error("intensity must be finite and >= 0");
    }
    const std::complex<double> i_unit(0.0, 1.0);
    const double shifted = dp.delta_0 + dp.kerr_eff * intensity;

    MeanState state;
    state.m = -i_unit * dp.drive_amp / std::complex<double>(shifted, -dp.kappa_0);
    state.a = -dp.sys.g_ma * state.m / std::complex<double>(dp.delta_a, -dp.sys.kappa_a);
    state.b = -dp.sys.g_mb * std::norm(state.m)
              / std::complex<double>(dp.sys.omega_b, -dp.sys.kappa_b);

    const double err = std::abs(state.intensity() - intensity) / std::max(intensity, 1.0);
    if (err > 1e-9) {
        throw std::domain_error("intensity is not a root of the cubic (residual "
                                + std::to_string(err) + ")");
    }
    return state;
}

std::optional<SwitchingPoints> switching_points(const DerivedParams& dp) {
    if (dp.kerr_eff == 0.0) {
        throw std::domain_error("no Kerr turning points (K' = 0)");
    }
    const double disc = dp.delta_0 * dp.delta_0 - 3.0 * dp.kappa_0 * dp.kappa_0;
    if (disc < 0.0) {
        return std::nullopt;
    }
    const double s = std::sqrt(disc);
    const double i_minus = (-2.0 * dp.delta_0 - s) / (3.0 * dp.kerr_eff);
    const double i_plus = (-2.0 * dp.delta_0 + s) / (3.0 * dp.kerr_eff);
    SwitchingPoints pts{std::min(i_minus, i_plus), std::max(i_minus, i_plus)};
    if (pts.lower <= 0.0 || pts.upper <= 0.0) {
        return std::nullopt;
    }
    return pts;
}

double critical_drive(const DerivedParams& dp) {
    if (dp.delta_0 == 0.0) {
        return 0.0;
    }
    if (dp.kerr_eff == 0.0) {
        throw std::domain_error("critical drive undefined for K' = 0");
    }
    const double radicand =
        -8.0 * dp.delta_0 * dp.delta_0 * dp.delta_0 / (27.0 * dp.kerr_eff);
    if (radicand < 0.0) {
        throw std::domain_error("bistability-sign condition violated "
                                "(requires delta_m < eta delta_a for K' > 0)");
    }
    return std::sqrt(radicand);
}

std::optional<PowerWindow> bistable_power_window(const SystemParams& params,
                                                 double p_min, double p_max) {
    if (!std::isfinite(p_min) || !std::isfinite(p_max) || p_min > p_max) {
        throw std::domain_error("power range must be finite with p_min <= p_max");
    }
    const DerivedParams dp = derive(params);
    const double kp = dp.kerr_eff;
    const double d0 = dp.delta_0;
    const double k0 = dp.kappa_0;
    if (kp == 0.0) {
        return std::nullopt;
    }

    // three-root criterion as a quadratic in x = Omega^2:
    //   27 K'^2 x^2 + 4 d0 K' (d0^2 + 9 k0^2) x + 4 k0^2 (d0^2 + k0^2)^2 < 0
    const double qa = 27.0 * kp * kp;
    const double qb = 4.0 * d0 * kp * (d0 * d0 + 9.0 * k0 * k0);
    const double qc = 4.0 * k0 * k0 * (d0 * d0 + k0 * k0) * (d0 * d0 + k0 * k0);
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) {
        return std::nullopt;
    }
    const double s = std::sqrt(disc);
    // qa > 0 and qc > 0: both roots share the sign of -qb
    double x_low = (-qb - s) / (2.0 * qa);
    double x_high = (-qb + s) / (2.0 * qa);
    if (x_low > x_high) {
        std::swap(x_low, x_high);
    }
    if (x_high <= 0.0) {
        return std::nullopt;
    }
    x_low = std::max(x_low, 0.0);

    const double to_power = constants::hbar * params.omega_d / (2.0 * params.kappa_m);
    PowerWindow window{x_low * to_power, x_high * to_power};
    window.p_low = std::max(window.p_low, p_min);
    window.p_high = std::min(window.p_high, p_max);
    if (window.p_low >= window.p_high) {
        return std::nullopt;
    }
    return window;
}

} // namespace magnomech
