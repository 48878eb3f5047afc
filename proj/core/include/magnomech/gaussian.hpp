#pragma once

#include <vector>

#include <Eigen/Dense>

#include "magnomech/dynamics.hpp"
#include "magnomech/stability.hpp"

namespace magnomech {

enum class Mode { cavity = 0, magnon = 1, phonon = 2 };

/// Unique symmetric solution V of A V + V A^T + D = 0 by the Bartels-Stewart
/// method (complex Schur + triangular substitution). Requires A Hurwitz;
/// throws NoStationaryState otherwise. The residual is verified to
/// 1e-10 * ||D||_F (NumericError beyond that).
Matrix6d steady_covariance(const DriftMatrix& drift, const Matrix6d& diffusion);

/// 4x4 reduced covariance matrix of a mode pair in block form
/// [[alpha, beta], [beta^T, gamma]], mode i first.
struct TwoModeCM {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();

    Eigen::Matrix2d alpha() const { return v.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d beta() const { return v.topRightCorner<2, 2>(); }
    Eigen::Matrix2d gamma() const { return v.bottomRightCorner<2, 2>(); }
    /// det(alpha) + det(gamma) - 2 det(beta)
    double sigma() const;
};

/// Extracts the two-mode submatrix preserving order (i first).
/// Throws std::domain_error for equal indices.
TwoModeCM reduce_two_mode(const Matrix6d& v, Mode i, Mode j);

/// Logarithmic negativity E_N = max[0, -ln(2 nu_-)] with
/// nu_- = 2^{-1/2} [Sigma - sqrt(Sigma^2 - 4 det V)]^{1/2}.
/// Throws NumericError when Sigma^2 < 4 det V beyond rounding tolerance.
double log_negativity(const TwoModeCM& v2);

/// Symplectic eigenvalues of a 2n x 2n covariance matrix (|imag| of the
/// eigenvalues of Omega V), ascending. Physical states have all >= 1/2.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v);

/// All symplectic eigenvalues >= 1/2 - tol.
bool is_physical(const Eigen::MatrixXd& v, double tol = 1e-9);

/// min eigenvalue of gamma / (1/2); values < 1 indicate squeezing below vacuum.
double squeezing_degree(const Eigen::Matrix2d& gamma);

/// Ratio of the largest to smallest eigenvalue of a 2x2 block (Wigner-ellipse
/// elongation).
double anisotropy(const Eigen::Matrix2d& gamma);

struct WignerGrid {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0;

    /// Symmetric grid covering n_sigma standard deviations of the widest
    /// principal axis of gamma.
    static WignerGrid covering(const Eigen::Matrix2d& gamma, double n_sigma = 6.0,
                               int points = 161);
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
};

/// Gaussian Wigner distribution of one mode,
///   W(u) = exp(-1/2 u^T gamma^-1 u) / (2 pi sqrt(det gamma)),
/// evaluated on a grid. The sqrt(det gamma) prefactor makes the field
/// integrate to one.
struct WignerField {
    WignerGrid grid;
    Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();
    std::vector<double> values;  ///< row-major, values[iy * nx + ix]

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx + ix]; }
    /// Trapezoidal integral over the grid.
    double integral() const;
};

/// Evaluates the Wigner distribution; throws std::domain_error unless gamma is
/// symmetric positive-definite.
WignerField wigner_field(const Eigen::Matrix2d& gamma, const WignerGrid& grid);

struct EntanglementAverage {
    double mean = 0.0;
    double temporal_std = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Time-averaged log-negativity of a mode pair over
/// [transient_cut, transient_cut + window]: integrates the covariance from the
/// coherent/thermal initial state along the mean-field trajectory (starting at
/// the largest stable root, or at the perturbed largest root when no stable
/// fixed point exists) and averages E_N(t) over the window samples.
EntanglementAverage time_averaged_entanglement(const DerivedParams& dp,
                                               double transient_cut, double window,
                                               Mode mode_i = Mode::cavity,
                                               Mode mode_j = Mode::magnon,
                                               const IntegratorOptions& opts = {});

} // namespace magnomech
