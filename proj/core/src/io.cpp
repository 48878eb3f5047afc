#include "magnomech/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

using nlohmann::json;

// full round-trip precision, deterministic across runs and worker counts
std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

const std::set<std::string> kKnownKeys = {
    "omega_a", "omega_m", "omega_b", "kappa_a", "kappa_m", "kappa_b",
    "g_ma", "g_mb", "kerr_K", "omega_d", "drive_power", "temperature",
    "delta_a", "delta_m", "unit_convention",
};

double require_number(const json& obj, const std::string& key) {
    if (!obj.contains(key)) {
        throw ConfigError("missing required key '" + key + "'");
    }
    if (!obj.at(key).is_number()) {
        throw ConfigError("key '" + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    return out;
}

} // namespace

SystemParams parse_system_params(const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parameter file is not valid JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw ConfigError("parameter file must contain a JSON object");
    }
    for (const auto& item : obj.items()) {
        if (!kKnownKeys.contains(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "'");
        }
    }

    if (!obj.contains("unit_convention")) {
        throw ConfigError("missing required key 'unit_convention'");
    }
    const std::string convention = obj.at("unit_convention").get<std::string>();
    double scale = 1.0;
    if (convention == "hz_over_2pi") {
        scale = constants::two_pi;
    } else if (convention != "rad_per_s") {
        throw ConfigError("key 'unit_convention' must be \"hz_over_2pi\" or \"rad_per_s\"");
    }

    SystemParams p;
    p.omega_b = scale * require_number(obj, "omega_b");
    p.kappa_a = scale * require_number(obj, "kappa_a");
    p.kappa_m = scale * require_number(obj, "kappa_m");
    p.kappa_b = scale * require_number(obj, "kappa_b");
    p.g_ma = scale * require_number(obj, "g_ma");
    p.g_mb = scale * require_number(obj, "g_mb");
    p.kerr_K = scale * require_number(obj, "kerr_K");
    p.omega_d = scale * require_number(obj, "omega_d");
    p.drive_power = require_number(obj, "drive_power");
    p.temperature = require_number(obj, "temperature");

    // the cavity and magnon frequencies may be given as drive detunings
    if (obj.contains("omega_a") && obj.contains("delta_a")) {
        throw ConfigError("keys 'omega_a' and 'delta_a' are mutually exclusive");
    }
    if (obj.contains("omega_m") && obj.contains("delta_m")) {
        throw ConfigError("keys 'omega_m' and 'delta_m' are mutually exclusive");
    }
    if (obj.contains("delta_a")) {
        p.omega_a = p.omega_d + scale * require_number(obj, "delta_a");
    } else {
        p.omega_a = scale * require_number(obj, "omega_a");
    }
    if (obj.contains("delta_m")) {
        p.omega_m = p.omega_d + scale * require_number(obj, "delta_m");
    } else {
        p.omega_m = scale * require_number(obj, "omega_m");
    }

    try {
        validate(p);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return p;
}

SystemParams load_system_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open parameter file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_system_params(text.str());
}

std::string system_params_json(const SystemParams& p) {
    json obj;
    obj["unit_convention"] = "rad_per_s";
    obj["omega_a"] = p.omega_a;
    obj["omega_m"] = p.omega_m;
    obj["omega_b"] = p.omega_b;
    obj["kappa_a"] = p.kappa_a;
    obj["kappa_m"] = p.kappa_m;
    obj["kappa_b"] = p.kappa_b;
    obj["g_ma"] = p.g_ma;
    obj["g_mb"] = p.g_mb;
    obj["kerr_K"] = p.kerr_K;
    obj["omega_d"] = p.omega_d;
    obj["drive_power"] = p.drive_power;
    obj["temperature"] = p.temperature;
    return obj.dump(2);
}

void save_system_params(const std::string& path, const SystemParams& params) {
    auto out = open_for_write(path);
    out << system_params_json(params) << "\n";
}

std::string resolved_config_json(const DerivedParams& dp) {
    json obj;
    obj["params"] = json::parse(system_params_json(dp.sys));
    obj["derived"] = {
        {"delta_a", dp.delta_a}, {"delta_m", dp.delta_m},
        {"eta", dp.eta},         {"zeta", dp.zeta},
        {"kerr_eff", dp.kerr_eff}, {"delta_0", dp.delta_0},
        {"kappa_0", dp.kappa_0},   {"drive_amp", dp.drive_amp},
        {"n_th", dp.n_th},         {"tau", dp.tau},
    };
    return obj.dump();
}

void write_trajectory_csv(const std::string& path, const DerivedParams& dp,
                          const Trajectory& traj) {
    auto out = open_for_write(path);
    out << "# config " << resolved_config_json(dp) << "\n";
    const bool with_cov = !traj.covariances.empty();
    out << "t,t_over_tau,re_a,im_a,re_m,im_m,re_b,im_b,magnon_number";
    if (with_cov) {
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                out << ",v_" << i << j;
            }
        }
        out << ",e_am";
    }
    out << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const MeanState& s = traj.states[k];
        out << fmt(traj.times[k]) << ',' << fmt(traj.times[k] / traj.tau) << ','
            << fmt(s.a.real()) << ',' << fmt(s.a.imag()) << ','
            << fmt(s.m.real()) << ',' << fmt(s.m.imag()) << ','
            << fmt(s.b.real()) << ',' << fmt(s.b.imag()) << ','
            << fmt(s.intensity());
        if (with_cov) {
            const Matrix6d& v = traj.covariances[k];
            for (int i = 0; i < 6; ++i) {
                for (int j = i; j < 6; ++j) {
                    out << ',' << fmt(v(i, j));
                }
            }
            out << ',' << fmt(log_negativity(reduce_two_mode(v, Mode::cavity, Mode::magnon)));
        }
        out << "\n";
    }
    if (traj.truncated) {
        out << "# truncated: integration stopped before the requested final time\n";
    }
}

void write_entanglement_csv(const std::string& path, const DerivedParams& dp,
                            const std::vector<double>& times,
                            const std::vector<double>& values, double tau) {
    auto out = open_for_write(path);
    out << "# config " << resolved_config_json(dp) << "\n";
    out << "t,t_over_tau,e_n\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << fmt(times[k]) << ',' << fmt(times[k] / tau) << ',' << fmt(values[k]) << "\n";
    }
}

void write_wigner_field(const std::string& path_base, const DerivedParams& dp,
                        const WignerField& field) {
    {
        auto out = open_for_write(path_base + ".csv");
        out << "# config " << resolved_config_json(dp) << "\n";
        out << "x,y,w\n";
        for (int iy = 0; iy < field.grid.ny; ++iy) {
            const double y = field.grid.y_min + field.grid.dy() * iy;
            for (int ix = 0; ix < field.grid.nx; ++ix) {
                const double x = field.grid.x_min + field.grid.dx() * ix;
                out << fmt(x) << ',' << fmt(y) << ',' << fmt(field.at(ix, iy)) << "\n";
            }
        }
    }
    json sidecar;
    sidecar["grid"] = {
        {"x_min", field.grid.x_min}, {"x_max", field.grid.x_max},
        {"y_min", field.grid.y_min}, {"y_max", field.grid.y_max},
        {"nx", field.grid.nx},       {"ny", field.grid.ny},
    };
    sidecar["gamma"] = {{field.gamma(0, 0), field.gamma(0, 1)},
                        {field.gamma(1, 0), field.gamma(1, 1)}};
    sidecar["config"] = json::parse(resolved_config_json(dp));
    auto out = open_for_write(path_base + ".json");
    out << sidecar.dump(2) << "\n";
}

namespace {

json sweep_spec_json(const SweepSpec& spec) {
    json axes = json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"parameter", axis.parameter},
                        {"min", axis.min},
                        {"max", axis.max},
                        {"count", axis.count},
                        {"log_scale", axis.log_scale}});
    }
    const char* task = spec.task == SweepTask::classify ? "classify"
                       : spec.task == SweepTask::entangle ? "entangle"
                                                          : "dynamics";
    return json{{"axes", axes},
                {"task", task},
                {"fast_mode", spec.fast_mode},
                {"fast_stride", spec.fast_stride},
                {"transient_cut_tau", spec.transient_cut_tau},
                {"window_tau", spec.window_tau},
                {"lyapunov_horizon_tau", spec.lyapunov_horizon_tau},
                {"base", json::parse(system_params_json(spec.base))}};
}

} // namespace

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    auto out = open_for_write(path);
    out << "# config " << sweep_spec_json(result.spec).dump() << "\n";

    const std::string name0 = result.spec.axes[0].parameter;
    const std::string name1 =
        result.spec.axes.size() == 2 ? result.spec.axes[1].parameter : "unused";
    out << "i,j," << name0 << ',' << name1
        << ",region,n_roots,i1,i2,i3,stable1,stable2,stable3,"
           "max_re1,max_re2,max_re3,e_am,lyapunov,error\n";

    const std::size_t n1 = result.axis1_values.size();
    for (std::size_t flat = 0; flat < result.cells.size(); ++flat) {
        const SweepCell& cell = result.cells[flat];
        out << flat / n1 << ',' << flat % n1 << ',' << fmt(cell.coords[0]) << ','
            << fmt(cell.coords[1]) << ',' << to_string(cell.region) << ','
            << cell.intensities.size();
        for (std::size_t k = 0; k < 3; ++k) {
            out << ',';
            if (k < cell.intensities.size()) {
                out << fmt(cell.intensities[k]);
            }
        }
        for (std::size_t k = 0; k < 3; ++k) {
            out << ',';
            if (k < cell.stable.size()) {
                out << (cell.stable[k] ? 1 : 0);
            }
        }
        for (std::size_t k = 0; k < 3; ++k) {
            out << ',';
            if (k < cell.max_real_parts.size()) {
                out << fmt(cell.max_real_parts[k]);
            }
        }
        out << ',' << (std::isnan(cell.e_am) ? "" : fmt(cell.e_am));
        out << ',' << (std::isnan(cell.lyapunov) ? "" : fmt(cell.lyapunov));
        out << ',' << cell.error_code << "\n";
    }
}

void write_sweep_sidecar(const std::string& path, const SweepResult& result) {
    json obj = sweep_spec_json(result.spec);
    obj["axis0_values"] = result.axis0_values;
    obj["axis1_values"] = result.axis1_values;
    auto out = open_for_write(path);
    out << obj.dump(2) << "\n";
}

void write_branch_table_csv(const std::string& path, const DerivedParams& dp,
                            const std::vector<BranchPoint>& table) {
    auto out = open_for_write(path);
    out << "# config " << resolved_config_json(dp) << "\n";
    out << "power_w,root_index,intensity,stable,max_real_part\n";
    for (const auto& row : table) {
        out << fmt(row.power) << ',' << row.root_index << ',' << fmt(row.intensity)
            << ',' << (row.stable ? 1 : 0) << ',' << fmt(row.max_real_part) << "\n";
    }
}

} // namespace magnomech
