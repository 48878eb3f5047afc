#include "magnomech/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

} // namespace

Matrix6d steady_covariance(const DriftMatrix& drift, const Matrix6d& diffusion) {
    const Matrix6d& a = drift.a;
    {
        Eigen::EigenSolver<Matrix6d> es(a, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) {
            throw NumericError("drift-matrix eigensolver failed");
        }
        if (es.eigenvalues().real().maxCoeff() >= 0.0) {
            throw NoStationaryState(
                "drift matrix is not Hurwitz-stable: no stationary Gaussian state "
                "(use integrate_covariance)");
        }
    }

    // Bartels-Stewart on the complex Schur form: with A = U T U^H the equation
    // A V + V A^T + D = 0 becomes T Y + Y T^H = -U^H D U, Y = U^H V U, solved
    // by back-substitution from the last column/row (T upper triangular).
    Eigen::ComplexSchur<Matrix6cd> schur(a.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success) {
        throw NumericError("complex Schur decomposition failed");
    }
    const Matrix6cd& t = schur.matrixT();
    const Matrix6cd& u = schur.matrixU();
    const Matrix6cd c = u.adjoint() * diffusion.cast<std::complex<double>>() * u;

    Matrix6cd y = Matrix6cd::Zero();
    for (int k = 5; k >= 0; --k) {
        for (int i = 5; i >= 0; --i) {
            std::complex<double> rhs = -c(i, k);
            for (int j = i + 1; j < 6; ++j) {
                rhs -= t(i, j) * y(j, k);
            }
            for (int j = k + 1; j < 6; ++j) {
                rhs -= y(i, j) * std::conj(t(k, j));
            }
            y(i, k) = rhs / (t(i, i) + std::conj(t(k, k)));
        }
    }

    Matrix6d v = (u * y * u.adjoint()).real();
    v = 0.5 * (v + v.transpose()).eval();

    const double residual = (a * v + v * a.transpose() + diffusion).norm();
    if (residual > 1e-10 * diffusion.norm()) {
        throw NumericError("Lyapunov solution residual above tolerance: "
                           + std::to_string(residual));
    }
    return v;
}

double TwoModeCM::sigma() const {
    return alpha().determinant() + gamma().determinant() - 2.0 * beta().determinant();
}

TwoModeCM reduce_two_mode(const Matrix6d& v, Mode i, Mode j) {
    if (i == j) {
        throw std::domain_error("two-mode reduction needs distinct modes");
    }
    const int bi = 2 * static_cast<int>(i);
    const int bj = 2 * static_cast<int>(j);
    TwoModeCM out;
    out.v.topLeftCorner<2, 2>() = v.block<2, 2>(bi, bi);
    out.v.topRightCorner<2, 2>() = v.block<2, 2>(bi, bj);
    out.v.bottomLeftCorner<2, 2>() = v.block<2, 2>(bj, bi);
    out.v.bottomRightCorner<2, 2>() = v.block<2, 2>(bj, bj);
    return out;
}

double log_negativity(const TwoModeCM& v2) {
    const double sigma = v2.sigma();
    const double det_v = v2.v.determinant();
    double radicand = sigma * sigma - 4.0 * det_v;
    const double scale = sigma * sigma + std::abs(4.0 * det_v);
    if (radicand < 0.0) {
        if (radicand < -1e-12 * scale) {
            throw NumericError("two-mode covariance fails Sigma^2 >= 4 det V");
        }
        radicand = 0.0;
    }
    const double nu_minus_sq = 0.5 * (sigma - std::sqrt(radicand));
    if (nu_minus_sq <= 0.0) {
        throw NumericError("partial-transpose symplectic eigenvalue is not positive");
    }
    const double nu_minus = std::sqrt(nu_minus_sq);
    return std::max(0.0, -std::log(2.0 * nu_minus));
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v) {
    const auto dim = v.rows();
    if (dim % 2 != 0 || v.cols() != dim) {
        throw std::domain_error("covariance matrix must be square with even dimension");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim / 2; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(omega * v, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NumericError("symplectic eigenvalue solver failed");
    }
    std::vector<double> nus(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        nus[static_cast<std::size_t>(k)] = std::abs(es.eigenvalues()(k).imag());
    }
    std::sort(nus.begin(), nus.end());
    // eigenvalues of (Omega V) come in +-i nu pairs; keep one of each
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(dim / 2));
    for (Eigen::Index k = 1; k < dim; k += 2) {
        out.push_back(nus[static_cast<std::size_t>(k)]);
    }
    return out;
}

bool is_physical(const Eigen::MatrixXd& v, double tol) {
    const auto nus = symplectic_eigenvalues(v);
    return std::all_of(nus.begin(), nus.end(),
                       [tol](double nu) { return nu >= 0.5 - tol; });
}

double squeezing_degree(const Eigen::Matrix2d& gamma) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gamma);
    return es.eigenvalues()(0) / 0.5;
}

double anisotropy(const Eigen::Matrix2d& gamma) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gamma);
    return es.eigenvalues()(1) / es.eigenvalues()(0);
}

WignerGrid WignerGrid::covering(const Eigen::Matrix2d& gamma, double n_sigma, int points) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gamma);
    const double sigma_max = std::sqrt(std::max(es.eigenvalues()(1), 0.0));
    const double half = n_sigma * sigma_max;
    WignerGrid grid;
    grid.x_min = -half;
    grid.x_max = half;
    grid.y_min = -half;
    grid.y_max = half;
    grid.nx = points;
    grid.ny = points;
    return grid;
}

double WignerField::integral() const {
    // trapezoidal weights; the tails of a covering grid are negligible anyway
    double acc = 0.0;
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double wy = (iy == 0 || iy == grid.ny - 1) ? 0.5 : 1.0;
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double wx = (ix == 0 || ix == grid.nx - 1) ? 0.5 : 1.0;
            acc += wx * wy * at(ix, iy);
        }
    }
    return acc * grid.dx() * grid.dy();
}

WignerField wigner_field(const Eigen::Matrix2d& gamma, const WignerGrid& grid) {
    if (grid.nx < 2 || grid.ny < 2) {
        throw std::domain_error("Wigner grid needs at least 2 points per axis");
    }
    const double det = gamma.determinant();
    if (!(det > 0.0) || !(gamma(0, 0) > 0.0)
        || std::abs(gamma(0, 1) - gamma(1, 0)) > 1e-12 * std::abs(gamma(0, 0))) {
        throw std::domain_error("gamma must be symmetric positive-definite");
    }

    const Eigen::Matrix2d inv = gamma.inverse();
    const double prefactor = 1.0 / (constants::two_pi * std::sqrt(det));

    WignerField field;
    field.grid = grid;
    field.gamma = gamma;
    field.values.resize(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.y_min + grid.dy() * iy;
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x_min + grid.dx() * ix;
            const double quad = inv(0, 0) * x * x + 2.0 * inv(0, 1) * x * y
                                + inv(1, 1) * y * y;
            field.values[static_cast<std::size_t>(iy) * grid.nx + ix] =
                prefactor * std::exp(-0.5 * quad);
        }
    }
    return field;
}

EntanglementAverage time_averaged_entanglement(const DerivedParams& dp,
                                               double transient_cut, double window,
                                               Mode mode_i, Mode mode_j,
                                               const IntegratorOptions& opts) {
    if (!(transient_cut >= 0.0) || !(window > 0.0)) {
        throw std::domain_error("transient cut and window must be positive");
    }

    // start at the largest stable root; if none exists, kick the largest root
    const PhasePoint phase = classify_phase(dp);
    if (phase.reports.empty()) {
        throw NumericError("no fixed point found for time averaging");
    }
    MeanState start = phase.reports.back().mean_state;
    bool have_stable = false;
    for (auto it = phase.reports.rbegin(); it != phase.reports.rend(); ++it) {
        if (it->stable) {
            start = it->mean_state;
            have_stable = true;
            break;
        }
    }
    if (!have_stable) {
        start = perturbed(start);
    }

    const Trajectory traj = integrate_covariance(dp, start, coherent_thermal_covariance(dp),
                                                 transient_cut + window, opts);

    EntanglementAverage avg;
    avg.min = std::numeric_limits<double>::infinity();
    avg.max = -avg.min;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] < transient_cut) {
            continue;
        }
        const double e = log_negativity(reduce_two_mode(traj.covariances[k], mode_i, mode_j));
        sum += e;
        sum_sq += e * e;
        avg.min = std::min(avg.min, e);
        avg.max = std::max(avg.max, e);
        ++count;
    }
    if (count == 0) {
        throw NumericError("no samples inside the averaging window");
    }
    avg.mean = sum / static_cast<double>(count);
    avg.temporal_std =
        std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - avg.mean * avg.mean));
    return avg;
}

} // namespace magnomech
