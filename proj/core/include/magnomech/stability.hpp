#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"

namespace magnomech {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// State-dependent coefficients of the linearized fluctuation dynamics.
struct DriftCoefficients {
    double delta_m_pp = 0.0;               ///< effective magnon detuning incl. both Kerr shifts
    std::complex<double> delta_kerr{0, 0}; ///< 2 K m^2
    std::complex<double> g_mb_eff{0, 0};   ///< 2 g_mb m
};

/// Drift matrix of the quadrature fluctuations, ordering
/// (dX_a, dY_a, dX_m, dY_m, dX_b, dY_b) with dX = (dO + dO^dag)/sqrt(2).
/// Equals the Jacobian of the mean-field flow at the same state.
struct DriftMatrix {
    Matrix6d a = Matrix6d::Zero();
    DriftCoefficients coeffs;
};

/// Mean-field time derivatives (d<a>/dt, d<m>/dt, d<b>/dt) at a state,
/// including the Kerr term -2iK|m|^2 m and the magnomechanical term
/// -i g_mb m (b + b*); noise terms dropped.
std::array<std::complex<double>, 3> mean_field_rhs(const DerivedParams& dp,
                                                   const MeanState& state);

/// Linearization of mean_field_rhs at `state` in quadrature form.
DriftMatrix drift_matrix(const DerivedParams& dp, const MeanState& state);

/// Noise-injection matrix D = diag(kappa_a, kappa_a, kappa_m, kappa_m,
/// kappa_b(2 n_th + 1), kappa_b(2 n_th + 1)).
Matrix6d diffusion_matrix(const DerivedParams& dp);

/// Eigen-based stability report for one fixed point.
struct FixedPointReport {
    MeanState mean_state;
    std::array<std::complex<double>, 6> eigenvalues{};
    double max_real_part = 0.0;
    bool stable = false;     ///< max_real_part < 0, strict
    bool marginal = false;   ///< |max_real_part| within 1e-9 * ||A||_2 of zero
    bool hopf_like = false;  ///< dominant eigenvalue is a complex pair with Re > 0
};

/// Full eigen-decomposition and stability classification of a drift matrix.
/// Throws NumericError if the eigensolver fails.
FixedPointReport classify_fixed_point(const DriftMatrix& drift);

/// Phase-diagram region labels by (root count, stable count).
enum class Region {
    OneStable,               ///< 1S0U
    TwoStableOneUnstable,    ///< 2S1U
    ZeroStableOneUnstable,   ///< 0S1U
    OneStableTwoUnstable,    ///< 1S2U
    Degenerate,              ///< merged roots / discriminant on the boundary
    Other,                   ///< anything outside the four-label taxonomy
};

std::string to_string(Region region);
Region region_from_counts(std::size_t n_roots, std::size_t n_stable, bool degenerate);

/// Classification record of one parameter point.
struct PhasePoint {
    Region region = Region::Other;
    CubicSolution solution;
    std::vector<FixedPointReport> reports;  ///< one per root, ascending intensity
};

/// Solves the fixed-point problem and classifies every root:
/// magnon_intensities -> mean_state_from_intensity -> drift_matrix ->
/// classify_fixed_point, then assigns the region label.
PhasePoint classify_phase(const DerivedParams& dp);

} // namespace magnomech
