#include "magnomech/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> axis_values(const SweepAxis& axis) {
    std::vector<double> values(static_cast<std::size_t>(axis.count));
    if (axis.log_scale) {
        const double l0 = std::log(axis.min);
        const double l1 = std::log(axis.max);
        for (int i = 0; i < axis.count; ++i) {
            values[static_cast<std::size_t>(i)] =
                std::exp(l0 + (l1 - l0) * i / (axis.count - 1));
        }
    } else {
        for (int i = 0; i < axis.count; ++i) {
            values[static_cast<std::size_t>(i)] =
                axis.min + (axis.max - axis.min) * i / (axis.count - 1);
        }
    }
    return values;
}

void apply_parameter(SystemParams& p, const std::string& name, double value) {
    if (name == "drive_power") {
        p.drive_power = value;
    } else if (name == "delta_m") {
        p.omega_m = p.omega_d + value;
    } else if (name == "delta_a") {
        p.omega_a = p.omega_d + value;
    } else if (name == "temperature") {
        p.temperature = value;
    } else if (name == "kerr_K") {
        p.kerr_K = value;
    } else if (name == "g_ma") {
        p.g_ma = value;
    } else if (name == "g_mb") {
        p.g_mb = value;
    } else {
        throw ConfigError("unknown sweep parameter '" + name + "'");
    }
}

void validate_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw ConfigError("sweep needs one or two axes");
    }
    for (const auto& axis : spec.axes) {
        if (axis.count < 2) {
            throw ConfigError("axis '" + axis.parameter + "' needs count >= 2");
        }
        if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
            throw ConfigError("axis '" + axis.parameter + "' range must be finite");
        }
        if (axis.log_scale && (axis.min <= 0.0 || axis.max <= 0.0)) {
            throw ConfigError("axis '" + axis.parameter + "' log scale needs positive range");
        }
        SystemParams probe = spec.base;
        apply_parameter(probe, axis.parameter, axis.min);  // rejects unknown names
    }
    if (spec.fast_stride < 1) {
        throw ConfigError("fast_stride must be >= 1");
    }
}

void evaluate_cell(const SweepSpec& spec, std::size_t i, std::size_t j,
                   double v0, double v1, SweepCell& cell) {
    cell.coords = {v0, v1};
    cell.e_am = kNaN;
    cell.lyapunov = kNaN;
    try {
        SystemParams p = spec.base;
        apply_parameter(p, spec.axes[0].parameter, v0);
        if (spec.axes.size() == 2) {
            apply_parameter(p, spec.axes[1].parameter, v1);
        }
        const DerivedParams dp = derive(p);
        const PhasePoint phase = classify_phase(dp);
        cell.region = phase.region;
        for (const auto& report : phase.reports) {
            cell.intensities.push_back(report.mean_state.intensity());
            cell.stable.push_back(report.stable);
            cell.max_real_parts.push_back(report.max_real_part);
        }

        const bool any_stable =
            std::any_of(cell.stable.begin(), cell.stable.end(), [](bool s) { return s; });

        if (spec.task == SweepTask::entangle) {
            if (any_stable) {
                // steady-state entanglement on the upper stable branch
                for (std::size_t k = phase.reports.size(); k-- > 0;) {
                    if (phase.reports[k].stable) {
                        const auto drift = drift_matrix(dp, phase.reports[k].mean_state);
                        const Matrix6d v = steady_covariance(drift, diffusion_matrix(dp));
                        cell.e_am = log_negativity(
                            reduce_two_mode(v, Mode::cavity, Mode::magnon));
                        break;
                    }
                }
            } else if (spec.fast_mode
                       && ((i + j) % static_cast<std::size_t>(spec.fast_stride)) != 0) {
                cell.error_code = "SKIPPED_FAST";
            } else {
                const auto avg = time_averaged_entanglement(
                    dp, spec.transient_cut_tau * dp.tau, spec.window_tau * dp.tau);
                cell.e_am = avg.mean;
            }
        } else if (spec.task == SweepTask::dynamics) {
            MeanState start = phase.reports.back().mean_state;
            if (any_stable) {
                for (auto it = phase.reports.rbegin(); it != phase.reports.rend(); ++it) {
                    if (it->stable) {
                        start = it->mean_state;
                        break;
                    }
                }
            } else {
                start = perturbed(start);
            }
            const auto report = max_lyapunov_exponent(
                dp, start, spec.lyapunov_horizon_tau * dp.tau, dp.tau);
            cell.lyapunov = report.lambda_max;
        }
    } catch (const NoStationaryState&) {
        cell.error_code = "NO_STATIONARY_STATE";
    } catch (const ConfigError&) {
        cell.error_code = "CONFIG";
    } catch (const std::exception&) {
        cell.error_code = "NUMERIC";
    }
}

} // namespace

const SweepCell& SweepResult::cell(int i, int j) const {
    const auto n1 = axis1_values.size();
    return cells[static_cast<std::size_t>(i) * n1 + static_cast<std::size_t>(j)];
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    SweepResult result;
    result.spec = spec;
    result.axis0_values = axis_values(spec.axes[0]);
    result.axis1_values =
        spec.axes.size() == 2 ? axis_values(spec.axes[1]) : std::vector<double>{0.0};

    const std::size_t n0 = result.axis0_values.size();
    const std::size_t n1 = result.axis1_values.size();
    result.cells.resize(n0 * n1);

    auto work = [&](std::size_t flat) {
        const std::size_t i = flat / n1;
        const std::size_t j = flat % n1;
        evaluate_cell(spec, i, j, result.axis0_values[i],
                      spec.axes.size() == 2 ? result.axis1_values[j] : 0.0,
                      result.cells[flat]);
    };

    unsigned workers = spec.workers > 0 ? static_cast<unsigned>(spec.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(result.cells.size()));

    if (workers <= 1) {
        for (std::size_t flat = 0; flat < result.cells.size(); ++flat) {
            work(flat);
        }
        return result;
    }

    // grid points are independent; workers pull indices and write to
    // preallocated slots, so output is identical for any worker count
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (std::size_t flat = next.fetch_add(1); flat < result.cells.size();
                 flat = next.fetch_add(1)) {
                work(flat);
            }
        });
    }
    for (auto& thread : pool) {
        thread.join();
    }
    return result;
}

std::vector<BranchPoint> bistability_curve(const SweepSpec& spec) {
    if (spec.axes.size() != 1 || spec.axes[0].parameter != "drive_power") {
        throw ConfigError("bistability curve needs a 1-D drive_power sweep");
    }
    SweepSpec classify_spec = spec;
    classify_spec.task = SweepTask::classify;
    const SweepResult result = run_sweep(classify_spec);

    std::vector<BranchPoint> table;
    for (std::size_t i = 0; i < result.axis0_values.size(); ++i) {
        const SweepCell& cell = result.cell(static_cast<int>(i), 0);
        for (std::size_t k = 0; k < cell.intensities.size(); ++k) {
            BranchPoint row;
            row.power = result.axis0_values[i];
            row.root_index = static_cast<int>(k);
            row.intensity = cell.intensities[k];
            row.stable = cell.stable[k];
            row.max_real_part = cell.max_real_parts[k];
            table.push_back(row);
        }
    }
    return table;
}

SweepSpec preset_sweep(const std::string& name, const SystemParams& base) {
    validate(base);
    const double wb = base.omega_b;

    SweepSpec spec;
    spec.base = base;
    if (name == "fig1") {
        spec.axes = {{"drive_power", 1e-3, 0.150, 300, false}};
        spec.task = SweepTask::classify;
    } else if (name == "fig2") {
        spec.axes = {{"drive_power", 1e-3, 0.200, 200, false},
                     {"delta_m", -1.2 * wb, -0.4 * wb, 200, false}};
        spec.task = SweepTask::classify;
    } else if (name == "fig3") {
        spec.axes = {{"drive_power", 1e-3, 0.150, 150, false}};
        spec.task = SweepTask::entangle;
    } else if (name == "fig5") {
        spec.axes = {{"drive_power", 1e-3, 0.200, 100, false},
                     {"delta_m", -1.2 * wb, -0.4 * wb, 80, false}};
        spec.task = SweepTask::entangle;
        spec.fast_mode = true;
    } else {
        throw ConfigError("unknown preset '" + name
                          + "' (expected fig1, fig2, fig3 or fig5)");
    }
    return spec;
}

} // namespace magnomech
