#include "casfilm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "casfilm/constants.hpp"
#include "casfilm/errors.hpp"
#include "casfilm/version.hpp"

namespace casfilm::sweep {

namespace {
constexpr double kPi = 3.14159265358979323846;

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::ThicknessD: return "thickness_D";
        case Axis::PlasmaFrequency: return "plasma_frequency";
        case Axis::Separation: return "separation";
    }
    return "?";
}

const char* default_axis_column(Axis a) {
    switch (a) {
        case Axis::ThicknessD: return "thickness_D_nm";
        case Axis::PlasmaFrequency: return "omega_p_rad_s";
        case Axis::Separation: return "separation_nm";
    }
    return "?";
}

bool is_force_output(const std::string& name) {
    return name == "F_Q" || name == "F_P" || name == "F_CAS" ||
           name == "eta_Q" || name == "eta_P" || name == "delta";
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> k = {
        "d",   "m_F",   "N_ratio", "eps_zz_0", "F_Q",
        "F_P", "F_CAS", "eta_Q",   "eta_P",    "delta"};
    return k;
}

void validate(const SweepSpec& spec) {
    if (spec.explicit_grid.empty()) {
        if (!(spec.min < spec.max))
            throw std::invalid_argument("sweep: range min must be < max");
        if (spec.points < 2)
            throw std::invalid_argument("sweep: point count must be >= 2");
        if (spec.spacing == Spacing::Log && !(spec.min > 0.0))
            throw std::invalid_argument("sweep: log spacing needs min > 0");
    }
    if (spec.outputs.empty())
        // header-only tables are allowed; nothing else to check
        ;
    for (const auto& o : spec.outputs) {
        const auto& k = known_outputs();
        if (std::find(k.begin(), k.end(), o) == k.end())
            throw std::invalid_argument("sweep: unknown output column " + o);
    }
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (spec.axis != Axis::ThicknessD && !positive(spec.thickness_nm))
        throw std::invalid_argument("sweep: fixed thickness must be positive");
    if (spec.axis != Axis::PlasmaFrequency && !positive(spec.omega_p_rad_s))
        throw std::invalid_argument("sweep: fixed plasma frequency must be positive");
    if (spec.axis != Axis::Separation && !positive(spec.separation_nm)) {
        const bool needs_separation =
            std::any_of(spec.outputs.begin(), spec.outputs.end(),
                        is_force_output);
        if (needs_separation)
            throw std::invalid_argument("sweep: fixed separation must be positive");
    }
}

SweepRow evaluate_point(const SweepSpec& spec, double x) {
    SweepRow row;
    row.axis_value = x;
    row.values.assign(spec.outputs.size(),
                      std::numeric_limits<double>::quiet_NaN());
    try {
        double d_nm = spec.thickness_nm;
        double omega = spec.omega_p_rad_s;
        double ell_nm = spec.separation_nm;
        switch (spec.axis) {
            case Axis::ThicknessD: d_nm = x; break;
            case Axis::PlasmaFrequency: omega = x; break;
            case Axis::Separation: ell_nm = x; break;
        }
        const auto film = qwell::FilmSpec::from_nm_and_omega_p(d_nm, omega);
        const auto well = qwell::solve_effective_width(film);
        if (spec.axis_report == AxisReport::DKfOverPi) row.axis_value = well.m_f;

        const bool needs_force = std::any_of(
            spec.outputs.begin(), spec.outputs.end(), is_force_output);
        lifshitz::ForceResult fr;
        if (needs_force)
            fr = lifshitz::compare(film, units::to_internal_length(ell_nm),
                                   spec.options);

        for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
            const std::string& o = spec.outputs[i];
            double v;
            if (o == "d") v = units::to_nm(well.width);
            else if (o == "m_F") v = well.m_f;
            else if (o == "N_ratio") v = well.density / well.bulk_density;
            else if (o == "eps_zz_0") v = dielectric::eps_zz_static(well);
            else if (o == "F_Q") v = units::force_to_pascal(fr.f_quantized);
            else if (o == "F_P") v = units::force_to_pascal(fr.f_plasma);
            else if (o == "F_CAS") v = units::force_to_pascal(fr.f_casimir);
            else if (o == "eta_Q") v = fr.eta_q;
            else if (o == "eta_P") v = fr.eta_p;
            else v = fr.delta;
            row.values[i] = v;
        }
        row.converged = !needs_force || fr.converged;
    } catch (const std::exception& e) {
        row.converged = false;
        row.error = e.what();
    }
    return row;
}

nlohmann::json settings_json(const quad::IntegrationSettings& s) {
    return {{"rel_tol", s.rel_tol},
            {"abs_tol", s.abs_tol},
            {"max_levels", s.max_levels},
            {"transform", s.transform == quad::Transform::Rational
                              ? "rational"
                              : "exponential"}};
}

nlohmann::json metadata_json(const SweepSpec& spec) {
    nlohmann::json fixed;
    if (spec.axis != Axis::ThicknessD) fixed["thickness_nm"] = spec.thickness_nm;
    if (spec.axis != Axis::PlasmaFrequency)
        fixed["omega_p_rad_s"] = spec.omega_p_rad_s;
    if (spec.axis != Axis::Separation && spec.separation_nm > 0.0)
        fixed["separation_nm"] = spec.separation_nm;

    nlohmann::json j{
        {"label", spec.label},
        {"axis", axis_name(spec.axis)},
        {"axis_column", spec.axis_column.empty()
                            ? default_axis_column(spec.axis)
                            : spec.axis_column},
        {"spacing", spec.spacing == Spacing::Linear ? "linear" : "log"},
        {"fixed", fixed},
        {"outputs", spec.outputs},
        {"omega_p_convention",
         spec.options.convention == qwell::PlasmaConvention::SqrtDensityRatio
             ? "sqrt"
             : "linear"},
        {"optical_thickness",
         spec.options.optical_thickness_effective ? "d" : "D"},
        {"table_tail_tol", spec.options.table_tail_tol},
        {"quadrature", settings_json(spec.options.quadrature)},
        {"constants", units::constants_version()},
        {"version", version_string()},
    };
    if (spec.explicit_grid.empty()) {
        j["range"] = {{"min", spec.min}, {"max", spec.max},
                      {"points", spec.points}};
    } else {
        j["grid"] = spec.explicit_grid;
    }
    return j;
}

} // namespace

std::vector<double> make_grid(const SweepSpec& spec) {
    if (!spec.explicit_grid.empty()) return spec.explicit_grid;
    std::vector<double> g(spec.points);
    if (spec.spacing == Spacing::Linear) {
        const double h = (spec.max - spec.min) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) g[i] = spec.min + h * i;
    } else {
        const double lo = std::log(spec.min);
        const double h = (std::log(spec.max) - lo) / (spec.points - 1);
        for (int i = 0; i < spec.points; ++i) g[i] = std::exp(lo + h * i);
    }
    g.front() = spec.min;
    g.back() = spec.max;
    return g;
}

SweepTable run_sweep(const SweepSpec& spec) {
    validate(spec);
    const std::vector<double> grid = make_grid(spec);

    SweepTable table;
    table.columns.push_back(spec.axis_column.empty()
                                ? default_axis_column(spec.axis)
                                : spec.axis_column);
    for (const auto& o : spec.outputs) table.columns.push_back(o);
    table.rows.resize(grid.size());

    const long n = static_cast<long>(grid.size());
#ifdef _OPENMP
    const int nt = spec.workers > 0 ? spec.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (long i = 0; i < n; ++i)
        table.rows[static_cast<std::size_t>(i)] =
            evaluate_point(spec, grid[static_cast<std::size_t>(i)]);

    table.metadata_json = metadata_json(spec).dump();
    return table;
}

std::vector<SweepSpec> figure_preset(const std::string& id) {
    using qwell::g_factor;
    std::vector<SweepSpec> specs;

    auto force_outputs = std::vector<std::string>{
        "d", "m_F", "F_Q", "F_P", "F_CAS", "eta_Q", "eta_P", "delta"};

    if (id == "fig1") {
        SweepSpec s;
        s.axis = Axis::ThicknessD;
        s.omega_p_rad_s = 1e16;
        s.outputs = {"eps_zz_0", "N_ratio"};
        s.axis_report = AxisReport::DKfOverPi;
        s.axis_column = "d_kF_over_pi";
        s.label = "fig1";
        // uniform grid in d k_F/pi over [1.05, 12], mapped to the
        // ion-slab thickness through the neutrality condition
        const double omega =
            units::to_internal_angular_frequency(s.omega_p_rad_s);
        const double n0 = omega * omega / (4.0 * kPi);
        const double kf = std::cbrt(3.0 * kPi * kPi * n0);
        const int points = 1200;
        s.explicit_grid.reserve(points);
        for (int i = 0; i < points; ++i) {
            const double mf = 1.05 + (12.0 - 1.05) * i / (points - 1);
            const double d_bohr = kPi * mf / kf;
            s.explicit_grid.push_back(units::to_nm(d_bohr * g_factor(mf)));
        }
        specs.push_back(std::move(s));
        return specs;
    }

    if (id == "fig3") {
        // thickness sweeps; the published axis extent is not stated, so the
        // range [1, 50] nm covering the strong-oscillation regime through
        // plasma-model recovery is declared here and in the metadata
        const double params[3][2] = {{1e14, 10.0}, {5e14, 50.0}, {1e14, 50.0}};
        for (int c = 0; c < 3; ++c) {
            SweepSpec s;
            s.axis = Axis::ThicknessD;
            s.min = 1.0;
            s.max = 50.0;
            s.points = 200;
            s.spacing = Spacing::Linear;
            s.omega_p_rad_s = params[c][0];
            s.separation_nm = params[c][1];
            s.outputs = force_outputs;
            s.label = "fig3_curve" + std::to_string(c + 1);
            specs.push_back(std::move(s));
        }
        return specs;
    }

    if (id == "fig4") {
        const double params[3][2] = {{1.0, 10.0}, {5.0, 10.0}, {5.0, 50.0}};
        for (int c = 0; c < 3; ++c) {
            SweepSpec s;
            s.axis = Axis::PlasmaFrequency;
            s.min = 1e14;
            s.max = 1e16;
            s.points = 60;
            s.spacing = Spacing::Log;
            s.thickness_nm = params[c][0];
            s.separation_nm = params[c][1];
            s.outputs = force_outputs;
            s.label = "fig4_curve" + std::to_string(c + 1);
            specs.push_back(std::move(s));
        }
        return specs;
    }

    if (id == "fig5" || id == "fig6") {
        const bool five = id == "fig5";
        const double params5[3][2] = {{1e16, 5.0}, {1e15, 1.0}, {1e15, 5.0}};
        const double params6[1][2] = {{1e15, 5.0}};
        const int curves = five ? 3 : 1;
        for (int c = 0; c < curves; ++c) {
            SweepSpec s;
            s.axis = Axis::Separation;
            s.min = 10.0;
            s.max = 10000.0;
            s.points = 40;
            s.spacing = Spacing::Log;
            s.omega_p_rad_s = five ? params5[c][0] : params6[c][0];
            s.thickness_nm = five ? params5[c][1] : params6[c][1];
            s.outputs = five ? force_outputs
                             : std::vector<std::string>{"delta", "eta_P", "eta_Q"};
            s.label = id + "_curve" + std::to_string(c + 1);
            specs.push_back(std::move(s));
        }
        return specs;
    }

    throw std::invalid_argument("figure_preset: unknown id " + id);
}

std::string format_scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

void write_table(const SweepTable& table, TableFormat format,
                 std::ostream& out) {
    if (format == TableFormat::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out << ',';
            out << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            out << format_scientific(row.axis_value);
            for (double v : row.values) out << ',' << format_scientific(v);
            out << '\n';
        }
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json values;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            const double v = row.values[i];
            values[table.columns[i + 1]] =
                std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
        }
        nlohmann::json r{{"axis", row.axis_value},
                         {"values", values},
                         {"converged", row.converged}};
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    nlohmann::json j{{"metadata", nlohmann::json::parse(table.metadata_json)},
                     {"rows", rows}};
    out << j.dump(2) << '\n';
}

void write_table(const SweepTable& table, TableFormat format,
                 const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("write_table: cannot open " + path);
    write_table(table, format, f);
    f.flush();
    if (!f) throw io_error("write_table: write failed for " + path);
}

} // namespace casfilm::sweep
