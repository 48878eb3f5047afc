#include "magnomech/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "magnomech/errors.hpp"
#include "magnomech/gaussian.hpp"

namespace magnomech {

namespace {

namespace ode = boost::numeric::odeint;
using state_t = std::vector<double>;

MeanState unpack_mean(const state_t& y) {
    MeanState s;
    s.a = {y[0], y[1]};
    s.m = {y[2], y[3]};
    s.b = {y[4], y[5]};
    return s;
}

void pack_mean(const MeanState& s, state_t& y) {
    y[0] = s.a.real();
    y[1] = s.a.imag();
    y[2] = s.m.real();
    y[3] = s.m.imag();
    y[4] = s.b.real();
    y[5] = s.b.imag();
}

void mean_rhs_into(const DerivedParams& dp, const state_t& y, state_t& dydt) {
    const auto d = mean_field_rhs(dp, unpack_mean(y));
    dydt[0] = d[0].real();
    dydt[1] = d[0].imag();
    dydt[2] = d[1].real();
    dydt[3] = d[1].imag();
    dydt[4] = d[2].real();
    dydt[5] = d[2].imag();
}

// upper-triangle packing of a symmetric 6x6, row-major: (0,0),(0,1),...,(5,5)
constexpr int kCovEntries = 21;

void pack_cov(const Matrix6d& v, double* out) {
    int k = 0;
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            out[k++] = v(i, j);
        }
    }
}

Matrix6d unpack_cov(const double* in) {
    Matrix6d v;
    int k = 0;
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            v(i, j) = in[k];
            v(j, i) = in[k];
            ++k;
        }
    }
    return v;
}

struct MeanFieldOde {
    DerivedParams dp;
    void operator()(const state_t& y, state_t& dydt, double /*t*/) const {
        mean_rhs_into(dp, y, dydt);
    }
};

struct MeanCovOde {
    DerivedParams dp;
    Matrix6d diffusion;
    void operator()(const state_t& y, state_t& dydt, double /*t*/) const {
        mean_rhs_into(dp, y, dydt);
        const Matrix6d a = drift_matrix(dp, unpack_mean(y)).a;
        const Matrix6d v = unpack_cov(y.data() + 6);
        const Matrix6d dv = a * v + v * a.transpose() + diffusion;
        pack_cov(dv, dydt.data() + 6);
    }
};

// mean field plus one tangent vector propagated by the instantaneous Jacobian
struct TangentOde {
    DerivedParams dp;
    void operator()(const state_t& y, state_t& dydt, double /*t*/) const {
        mean_rhs_into(dp, y, dydt);
        const Matrix6d a = drift_matrix(dp, unpack_mean(y)).a;
        Eigen::Map<const Eigen::Matrix<double, 6, 1>> w(y.data() + 6);
        Eigen::Map<Eigen::Matrix<double, 6, 1>> dw(dydt.data() + 6);
        dw = a * w;
    }
};

std::vector<double> output_grid(double t_final, double tau, double samples_per_tau) {
    const double n_real = std::max(1.0, std::round(samples_per_tau * t_final / tau));
    const auto n = static_cast<std::size_t>(std::min(n_real, 20e6));
    std::vector<double> times(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        times[i] = t_final * static_cast<double>(i) / static_cast<double>(n);
    }
    return times;
}

template <typename System, typename Observer>
void run_integration(const System& system, state_t& y, const std::vector<double>& times,
                     const IntegratorOptions& opts, double dt0, Trajectory& traj,
                     Observer&& observer) {
    auto stepper = ode::make_dense_output(opts.abs_tol, opts.rel_tol,
                                          ode::runge_kutta_dopri5<state_t>());
    try {
        ode::integrate_times(stepper, system, y, times.begin(), times.end(), dt0,
                             observer);
    } catch (const NumericError&) {
        throw;
    } catch (const std::exception& e) {
        const double reached = traj.times.empty() ? 0.0 : traj.times.back();
        traj.truncated = true;
        throw NumericError("integration stalled near t = " + std::to_string(reached)
                           + " s (step-size underflow; " + e.what() + ")");
    }
}

} // namespace

Trajectory integrate_mean_field(const DerivedParams& dp, const MeanState& initial,
                                double t_final, const IntegratorOptions& opts) {
    Trajectory traj;
    traj.tau = dp.tau;
    if (t_final <= 0.0) {
        return traj;
    }
    const auto times = output_grid(t_final, dp.tau, opts.samples_per_tau);
    traj.times.reserve(times.size());
    traj.states.reserve(times.size());

    state_t y(6);
    pack_mean(initial, y);
    MeanFieldOde system{dp};
    run_integration(system, y, times, opts, dp.tau / 100.0, traj,
                    [&](const state_t& state, double t) {
                        traj.times.push_back(t);
                        traj.states.push_back(unpack_mean(state));
                    });
    return traj;
}

Matrix6d coherent_thermal_covariance(const DerivedParams& dp) {
    Matrix6d v = 0.5 * Matrix6d::Identity();
    v(4, 4) = v(5, 5) = dp.n_th + 0.5;
    return v;
}

Trajectory integrate_covariance(const DerivedParams& dp, const MeanState& initial_mean,
                                const Matrix6d& v0, double t_final,
                                const IntegratorOptions& opts) {
    if (!v0.isApprox(v0.transpose(), 1e-12)) {
        throw std::domain_error("initial covariance must be symmetric");
    }
    if (opts.check_physicality && !is_physical(v0)) {
        throw std::domain_error("initial covariance violates the uncertainty bound");
    }

    Trajectory traj;
    traj.tau = dp.tau;
    if (t_final <= 0.0) {
        return traj;
    }
    const auto times = output_grid(t_final, dp.tau, opts.samples_per_tau);

    state_t y(6 + kCovEntries);
    pack_mean(initial_mean, y);
    pack_cov(v0, y.data() + 6);

    MeanCovOde system{dp, diffusion_matrix(dp)};
    // tighter default than the mean-field run: the uncertainty-bound margin of
    // an initially pure mode is zero, so sample errors must stay below 1e-9
    IntegratorOptions cov_opts = opts;
    cov_opts.rel_tol = std::min(opts.rel_tol, 1e-10);
    cov_opts.abs_tol = std::min(opts.abs_tol, 1e-10);

    run_integration(system, y, times, cov_opts, dp.tau / 100.0, traj,
                    [&](const state_t& state, double t) {
                        const Matrix6d v = unpack_cov(state.data() + 6);
                        if (opts.check_physicality && !is_physical(v)) {
                            traj.truncated = true;
                            throw NumericError(
                                "covariance violates the uncertainty bound at t = "
                                + std::to_string(t) + " s; tighten tolerances");
                        }
                        traj.times.push_back(t);
                        traj.states.push_back(unpack_mean(state));
                        traj.covariances.push_back(v);
                    });
    return traj;
}

LimitCycleReport detect_limit_cycle(const Trajectory& traj, double transient_cut,
                                    double detect_tol) {
    if (traj.times.empty() || traj.times.back() < 2.0 * transient_cut) {
        throw std::invalid_argument("trajectory shorter than twice the transient cut");
    }

    std::vector<double> t, x;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] >= transient_cut) {
            t.push_back(traj.times[i]);
            x.push_back(traj.states[i].intensity());
        }
    }
    const auto n = x.size();
    if (n < 16) {
        throw std::invalid_argument("too few samples after the transient cut");
    }
    const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);

    LimitCycleReport report;
    report.transient_cut = transient_cut;

    const double hi = *std::max_element(x.begin(), x.end());
    const double lo = *std::min_element(x.begin(), x.end());
    report.amplitude = hi - lo;
    const double scale = std::max(std::abs(hi), std::abs(lo));
    if (report.amplitude <= 1e-9 * std::max(scale, 1.0)) {
        report.amplitude = 0.0;
        return report;  // constant signal
    }

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = x[i] - mean;
    }

    // period estimate: first autocorrelation peak past the zero crossing
    const std::size_t max_lag = n / 2;
    std::vector<double> r(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            acc += c[i] * c[i + k];
        }
        r[k] = acc / static_cast<double>(n - k);
    }
    std::size_t k0 = 0;
    while (k0 <= max_lag && r[k0] > 0.0) {
        ++k0;
    }
    if (k0 > max_lag) {
        return report;  // no decorrelation: drifting or aperiodic signal
    }
    std::size_t k_peak = k0;
    for (std::size_t k = k0; k <= max_lag; ++k) {
        if (r[k] > r[k_peak]) {
            k_peak = k;
        }
    }
    if (k_peak == k0 || k_peak >= max_lag) {
        return report;
    }
    const double denom = r[k_peak - 1] - 2.0 * r[k_peak] + r[k_peak + 1];
    const double shift =
        denom != 0.0 ? 0.5 * (r[k_peak - 1] - r[k_peak + 1]) / denom : 0.0;
    report.period = (static_cast<double>(k_peak) + shift) * dt;

    // confirmation: spacing of successive maxima above half the upper envelope
    const double peak_threshold = 0.5 * *std::max_element(c.begin(), c.end());
    std::vector<double> peak_times;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (c[i] > peak_threshold && c[i] >= c[i - 1] && c[i] > c[i + 1]) {
            const double d2 = c[i - 1] - 2.0 * c[i] + c[i + 1];
            const double frac = d2 != 0.0 ? 0.5 * (c[i - 1] - c[i + 1]) / d2 : 0.0;
            peak_times.push_back(t[i] + frac * dt);
        }
    }
    if (peak_times.size() < 3) {
        return report;
    }
    std::vector<double> spacing(peak_times.size() - 1);
    for (std::size_t i = 0; i + 1 < peak_times.size(); ++i) {
        spacing[i] = peak_times[i + 1] - peak_times[i];
    }
    const double s_mean = std::accumulate(spacing.begin(), spacing.end(), 0.0)
                          / static_cast<double>(spacing.size());
    double s_var = 0.0;
    for (double s : spacing) {
        s_var += (s - s_mean) * (s - s_mean);
    }
    const double s_std = std::sqrt(s_var / static_cast<double>(spacing.size()));
    const bool period_stable = s_std < detect_tol * s_mean;

    // amplitude stationarity between window halves
    const std::size_t half = n / 2;
    const auto minmax1 = std::minmax_element(x.begin(), x.begin() + half);
    const auto minmax2 = std::minmax_element(x.begin() + half, x.end());
    const double amp1 = *minmax1.second - *minmax1.first;
    const double amp2 = *minmax2.second - *minmax2.first;
    const bool amp_stationary =
        std::abs(amp1 - amp2) <= 0.1 * std::max({amp1, amp2, 1e-300});

    report.periodic = period_stable && amp_stationary;
    return report;
}

LyapunovReport max_lyapunov_exponent(const DerivedParams& dp, const MeanState& initial,
                                     double horizon, double renorm_interval) {
    if (!(horizon > 0.0) || !(renorm_interval > 0.0) || horizon < 4.0 * renorm_interval) {
        throw std::invalid_argument("horizon must cover several renormalization intervals");
    }

    state_t y(12);
    pack_mean(initial, y);
    const double w0 = 1.0 / std::sqrt(6.0);
    for (int k = 6; k < 12; ++k) {
        y[static_cast<std::size_t>(k)] = w0;
    }

    TangentOde system{dp};
    auto stepper = ode::make_controlled(1e-9, 1e-9, ode::runge_kutta_dopri5<state_t>());

    double log_sum = 0.0;
    double t = 0.0;
    double lambda_at_quarter = 0.0;
    double lambda_now = 0.0;
    const auto n_intervals =
        static_cast<std::size_t>(std::ceil(horizon / renorm_interval));
    const std::size_t quarter_mark =
        n_intervals - std::max<std::size_t>(1, n_intervals / 4);

    for (std::size_t k = 0; k < n_intervals; ++k) {
        const double t1 = std::min(t + renorm_interval, horizon);
        try {
            ode::integrate_adaptive(stepper, system, y, t, t1, renorm_interval / 50.0);
        } catch (const std::exception& e) {
            throw NumericError("tangent propagation stalled near t = "
                               + std::to_string(t) + " s (" + e.what() + ")");
        }
        double norm_sq = 0.0;
        for (int i = 6; i < 12; ++i) {
            norm_sq += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
        }
        const double norm = std::sqrt(norm_sq);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NumericError("tangent vector collapsed during renormalization");
        }
        log_sum += std::log(norm);
        for (int i = 6; i < 12; ++i) {
            y[static_cast<std::size_t>(i)] /= norm;
        }
        t = t1;
        lambda_now = log_sum / t;
        if (k + 1 == quarter_mark) {
            lambda_at_quarter = lambda_now;
        }
    }

    LyapunovReport report;
    report.lambda_max = lambda_now;
    // the estimator cannot resolve rates below 1/horizon
    const double drift = std::abs(lambda_now - lambda_at_quarter);
    report.converged =
        drift <= std::max(0.05 * std::abs(lambda_now), 1.0 / horizon);
    return report;
}

MeanState perturbed(const MeanState& state, double rel_eps) {
    MeanState kicked = state;
    kicked.m += rel_eps * std::abs(state.m);
    return kicked;
}

} // namespace magnomech
