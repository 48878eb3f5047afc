#pragma once

#include <string>

#include "magnomech/dynamics.hpp"
#include "magnomech/gaussian.hpp"
#include "magnomech/sweep.hpp"

namespace magnomech {

/// Loads a JSON parameter file. Keys are named exactly like SystemParams
/// fields; "unit_convention" must be "hz_over_2pi" (values are frequency/2pi
/// in Hz, multiplied by 2pi on load) or "rad_per_s". The magnon and cavity
/// frequencies may be given either directly (omega_m / omega_a) or as
/// detunings from the drive (delta_m / delta_a). Throws ConfigError naming
/// the offending key on missing, unknown, or conflicting entries.
SystemParams load_system_params(const std::string& path);

/// Parses parameters from a JSON string (same rules as load_system_params).
SystemParams parse_system_params(const std::string& json_text);

/// Serializes params in the normalized rad_per_s representation; the result
/// re-loads to bit-identical values.
std::string system_params_json(const SystemParams& params);
void save_system_params(const std::string& path, const SystemParams& params);

/// JSON fragment with the resolved configuration (params + derived values),
/// embedded in every output file for reproducibility.
std::string resolved_config_json(const DerivedParams& dp);

/// Trajectory CSV: t, t/tau, Re/Im of each amplitude, |m|^2, then the 21
/// upper-triangle covariance entries and E_am when covariances are present.
/// A "# config ..." comment line carries the resolved configuration; a
/// "# truncated" trailer marks trajectories cut short by integration failure.
void write_trajectory_csv(const std::string& path, const DerivedParams& dp,
                          const Trajectory& traj);

/// E_N(t) CSV: t, t/tau, e_n.
void write_entanglement_csv(const std::string& path, const DerivedParams& dp,
                            const std::vector<double>& times,
                            const std::vector<double>& values, double tau);

/// Wigner field as CSV grid (x, y, w) plus a JSON sidecar with the grid spec
/// and gamma block. Paths get ".csv" / ".json" appended.
void write_wigner_field(const std::string& path_base, const DerivedParams& dp,
                        const WignerField& field);

/// Long-format sweep CSV (one row per grid cell) and its JSON sidecar carrying
/// the full spec. Output is byte-deterministic for a given result.
void write_sweep_csv(const std::string& path, const SweepResult& result);
void write_sweep_sidecar(const std::string& path, const SweepResult& result);

/// Branch-table CSV for bistability curves.
void write_branch_table_csv(const std::string& path, const DerivedParams& dp,
                            const std::vector<BranchPoint>& table);

} // namespace magnomech
