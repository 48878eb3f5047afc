#pragma once

#include <array>
#include <string>
#include <vector>

#include "magnomech/gaussian.hpp"
#include "magnomech/stability.hpp"

namespace magnomech {

/// One sweep axis. Recognized parameter names: drive_power [W],
/// delta_m [rad/s] (sets omega_m = omega_d + value), delta_a [rad/s]
/// (sets omega_a likewise), temperature [K], kerr_K, g_ma, g_mb [rad/s].
struct SweepAxis {
    std::string parameter;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_scale = false;
};

enum class SweepTask {
    classify,   ///< roots + stability + region label
    entangle,   ///< classify + E_am (steady on the upper stable branch,
                ///< time-averaged where no stable root exists)
    dynamics,   ///< classify + maximal Lyapunov exponent
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  ///< one or two axes
    SystemParams base;
    SweepTask task = SweepTask::classify;
    int workers = 0;              ///< 0 = hardware concurrency; 1 = serial
    bool fast_mode = false;       ///< subsample expensive (time-averaged) cells
    int fast_stride = 4;
    double transient_cut_tau = 50.0;   ///< time-average settings [tau]
    double window_tau = 200.0;
    double lyapunov_horizon_tau = 400.0;
};

/// One evaluated grid point. Failures never abort a sweep; they are recorded
/// in error_code ("" = ok, "SKIPPED_FAST" = subsampled out in fast mode,
/// "NO_STATIONARY_STATE", "CONFIG", "NUMERIC").
struct SweepCell {
    std::array<double, 2> coords{0.0, 0.0};
    Region region = Region::Other;
    std::vector<double> intensities;
    std::vector<bool> stable;
    std::vector<double> max_real_parts;
    double e_am = 0.0;       ///< NaN unless task == entangle and evaluated
    double lyapunov = 0.0;   ///< NaN unless task == dynamics and evaluated
    std::string error_code;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis0_values;
    std::vector<double> axis1_values;  ///< {0} placeholder for 1-D sweeps
    std::vector<SweepCell> cells;      ///< row-major, cell(i,j) = cells[i * n1 + j]

    const SweepCell& cell(int i, int j) const;
};

/// Evaluates every grid point independently (parallel across a worker pool,
/// deterministic output ordering regardless of execution order).
/// Throws ConfigError for invalid specs (unknown axis parameter, count < 2,
/// non-finite range).
SweepResult run_sweep(const SweepSpec& spec);

/// One root of the intensity cubic at one drive power.
struct BranchPoint {
    double power = 0.0;        ///< [W]
    int root_index = 0;        ///< ascending-intensity index
    double intensity = 0.0;
    bool stable = false;
    double max_real_part = 0.0;
};

/// Per-power table of all real roots with stability tags (the S-curve data).
/// Requires a 1-D drive_power sweep spec.
std::vector<BranchPoint> bistability_curve(const SweepSpec& spec);

/// Built-in sweep recipes resolved against a base parameter set:
///   fig1  bistability branch table vs drive power
///   fig2  stability phase diagram in the (P_d, delta_m) plane
///   fig3  entanglement vs drive power
///   fig5  entanglement phase map (fast mode)
/// Throws ConfigError for unknown preset names.
SweepSpec preset_sweep(const std::string& name, const SystemParams& base);

} // namespace magnomech
