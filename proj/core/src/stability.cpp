#include "magnomech/stability.hpp"

#include <algorithm>
#include <cmath>

#include "magnomech/errors.hpp"

namespace magnomech {

std::array<std::complex<double>, 3> mean_field_rhs(const DerivedParams& dp,
                                                   const MeanState& s) {
    const std::complex<double> i_unit(0.0, 1.0);
    const SystemParams& p = dp.sys;

    const std::complex<double> da =
        -std::complex<double>(p.kappa_a, dp.delta_a) * s.a - i_unit * p.g_ma * s.m;
    const std::complex<double> dm =
        -std::complex<double>(p.kappa_m, dp.delta_m) * s.m - i_unit * p.g_ma * s.a
        - 2.0 * i_unit * p.kerr_K * std::norm(s.m) * s.m
        - i_unit * p.g_mb * s.m * (2.0 * s.b.real()) + dp.drive_amp;
    const std::complex<double> db =
        -std::complex<double>(p.kappa_b, p.omega_b) * s.b - i_unit * p.g_mb * std::norm(s.m);
    return {da, dm, db};
}

DriftMatrix drift_matrix(const DerivedParams& dp, const MeanState& s) {
    const SystemParams& p = dp.sys;
    const double intensity = std::norm(s.m);
    // effective magnon detuning at this state (not the fixed-point elimination)
    const double delta_m_prime =
        dp.delta_m + 2.0 * p.kerr_K * intensity + 2.0 * p.g_mb * s.b.real();

    DriftMatrix drift;
    drift.coeffs.delta_m_pp = delta_m_prime + 2.0 * p.kerr_K * intensity;
    drift.coeffs.delta_kerr = 2.0 * p.kerr_K * s.m * s.m;
    drift.coeffs.g_mb_eff = 2.0 * p.g_mb * s.m;

    const double dpp = drift.coeffs.delta_m_pp;
    const double dkx = drift.coeffs.delta_kerr.real();
    const double dky = drift.coeffs.delta_kerr.imag();
    const double gx = drift.coeffs.g_mb_eff.real();
    const double gy = drift.coeffs.g_mb_eff.imag();

    Matrix6d& a = drift.a;
    a.setZero();
    a(0, 0) = -p.kappa_a;
    a(0, 1) = dp.delta_a;
    a(0, 3) = p.g_ma;
    a(1, 0) = -dp.delta_a;
    a(1, 1) = -p.kappa_a;
    a(1, 2) = -p.g_ma;
    a(2, 1) = p.g_ma;
    a(2, 2) = -p.kappa_m + dky;
    a(2, 3) = dpp - dkx;
    a(2, 4) = gy;
    a(3, 0) = -p.g_ma;
    a(3, 2) = -dpp - dkx;
    a(3, 3) = -p.kappa_m - dky;
    a(3, 4) = -gx;
    a(4, 4) = -p.kappa_b;
    a(4, 5) = p.omega_b;
    a(5, 2) = -gx;
    a(5, 3) = -gy;
    a(5, 4) = -p.omega_b;
    a(5, 5) = -p.kappa_b;
    return drift;
}

Matrix6d diffusion_matrix(const DerivedParams& dp) {
    const SystemParams& p = dp.sys;
    Matrix6d d = Matrix6d::Zero();
    d(0, 0) = d(1, 1) = p.kappa_a;
    d(2, 2) = d(3, 3) = p.kappa_m;
    d(4, 4) = d(5, 5) = p.kappa_b * (2.0 * dp.n_th + 1.0);
    return d;
}

FixedPointReport classify_fixed_point(const DriftMatrix& drift) {
    Eigen::EigenSolver<Matrix6d> es(drift.a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NumericError("drift-matrix eigensolver failed");
    }

    FixedPointReport report;
    double max_re = -std::numeric_limits<double>::infinity();
    int dominant = 0;
    for (int k = 0; k < 6; ++k) {
        report.eigenvalues[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
        if (es.eigenvalues()(k).real() > max_re) {
            max_re = es.eigenvalues()(k).real();
            dominant = k;
        }
    }
    report.max_real_part = max_re;
    report.stable = max_re < 0.0;

    const double norm2 = drift.a.jacobiSvd().singularValues()(0);
    report.marginal = std::abs(max_re) <= 1e-9 * norm2;

    // Hopf signature: the dominant eigenvalue is one of a complex-conjugate
    // pair that has crossed into the right half plane.
    const std::complex<double> lead = es.eigenvalues()(dominant);
    report.hopf_like = max_re > 0.0 && std::abs(lead.imag()) > 1e-12 * norm2;
    return report;
}

std::string to_string(Region region) {
    switch (region) {
        case Region::OneStable: return "1S0U";
        case Region::TwoStableOneUnstable: return "2S1U";
        case Region::ZeroStableOneUnstable: return "0S1U";
        case Region::OneStableTwoUnstable: return "1S2U";
        case Region::Degenerate: return "degenerate";
        case Region::Other: break;
    }
    return "other";
}

Region region_from_counts(std::size_t n_roots, std::size_t n_stable, bool degenerate) {
    if (degenerate) {
        return Region::Degenerate;
    }
    if (n_roots == 1 && n_stable == 1) return Region::OneStable;
    if (n_roots == 3 && n_stable == 2) return Region::TwoStableOneUnstable;
    if (n_roots == 1 && n_stable == 0) return Region::ZeroStableOneUnstable;
    if (n_roots == 3 && n_stable == 1) return Region::OneStableTwoUnstable;
    return Region::Other;
}

PhasePoint classify_phase(const DerivedParams& dp) {
    PhasePoint point;
    point.solution = magnon_intensities(dp);
    std::size_t n_stable = 0;
    for (double intensity : point.solution.roots) {
        const MeanState state = mean_state_from_intensity(dp, intensity);
        FixedPointReport report = classify_fixed_point(drift_matrix(dp, state));
        report.mean_state = state;
        if (report.stable) {
            ++n_stable;
        }
        point.reports.push_back(report);
    }
    point.region = region_from_counts(point.solution.roots.size(), n_stable,
                                      point.solution.degenerate);
    return point;
}

} // namespace magnomech
