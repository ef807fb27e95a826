#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "casfilm/constants.hpp"
#include "casfilm/dielectric.hpp"
#include "casfilm/errors.hpp"
#include "casfilm/lifshitz.hpp"
#include "casfilm/quantum_well.hpp"
#include "casfilm/sweep.hpp"
#include "casfilm/version.hpp"

namespace {

using namespace casfilm;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConverged = 3;

struct GlobalOptions {
    double rel_tol = 1e-6;
    int max_levels = 2000;
    int threads = 0;  // 0: resolve from hardware / environment cap
    std::string convention = "sqrt";
    std::string optical_thickness = "D";
    std::string out;
    std::string format = "csv";
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("CASFILM_MAX_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0 && c < n) n = c;
    }
    return n;
}

lifshitz::CompareOptions compare_options(const GlobalOptions& g) {
    lifshitz::CompareOptions o;
    o.convention = g.convention == "linear"
                       ? qwell::PlasmaConvention::LinearDensityRatio
                       : qwell::PlasmaConvention::SqrtDensityRatio;
    o.optical_thickness_effective = g.optical_thickness == "d";
    o.quadrature.rel_tol = g.rel_tol;
    o.quadrature.max_levels = g.max_levels;
    return o;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw io_error("cannot open output file " + out_path);
    f << text;
    if (!f) throw io_error("write failed for " + out_path);
}

struct WellArgs {
    double thickness_nm = 0.0;
    double omega_p = 0.0;
    double n0_nm3 = 0.0;
};

qwell::FilmSpec film_from(const WellArgs& a) {
    if (a.omega_p > 0.0 && a.n0_nm3 > 0.0)
        throw std::invalid_argument("give either --omega-p or --n0-nm3, not both");
    if (a.omega_p > 0.0)
        return qwell::FilmSpec::from_nm_and_omega_p(a.thickness_nm, a.omega_p);
    if (a.n0_nm3 > 0.0)
        return qwell::FilmSpec::from_nm_and_density(a.thickness_nm, a.n0_nm3);
    throw std::invalid_argument("one of --omega-p or --n0-nm3 is required");
}

int cmd_well(const GlobalOptions& g, const WellArgs& a) {
    const auto film = film_from(a);
    qwell::WellSolveDiagnostics diag;
    const auto well = qwell::solve_effective_width(film, &diag);

    nlohmann::json energies = nlohmann::json::array();
    for (double e : well.subband_energies)
        energies.push_back(units::to_electron_volt(e));

    const auto convention = g.convention == "linear"
                                ? qwell::PlasmaConvention::LinearDensityRatio
                                : qwell::PlasmaConvention::SqrtDensityRatio;
    nlohmann::json j{
        {"d_nm", units::to_nm(well.width)},
        {"m_F", well.m_f},
        {"m_0", well.m_0},
        {"E_F_eV", units::to_electron_volt(well.fermi_energy)},
        {"subband_energies_eV", energies},
        {"N_over_N0", well.density / well.bulk_density},
        {"omega_p_eff",
         units::to_rad_per_s(qwell::effective_plasma_frequency(well, convention))},
        {"residual", diag.residual},
        {"sign_changes", diag.sign_changes},
    };
    emit(j.dump(2) + "\n", g.out);
    return kExitOk;
}

struct EpsilonArgs {
    double thickness_nm = 0.0;
    double omega_p = 0.0;
    double xi_min = 0.0;
    double xi_max = 0.0;
    int points = 200;
    std::string spacing = "log";
};

int cmd_epsilon(const GlobalOptions& g, const EpsilonArgs& a) {
    if (!(a.xi_min > 0.0) || !(a.xi_max > a.xi_min))
        throw std::invalid_argument("need 0 < --xi-min < --xi-max");
    if (a.points < 2) throw std::invalid_argument("--points must be >= 2");

    const auto film = qwell::FilmSpec::from_nm_and_omega_p(a.thickness_nm,
                                                           a.omega_p);
    const auto well = qwell::solve_effective_width(film);
    const auto table = dielectric::build_transition_table(well);
    const double omega_xx = qwell::effective_plasma_frequency(
        well, g.convention == "linear"
                  ? qwell::PlasmaConvention::LinearDensityRatio
                  : qwell::PlasmaConvention::SqrtDensityRatio);

    std::vector<double> grid(a.points);
    const double lo = units::to_internal_angular_frequency(a.xi_min);
    const double hi = units::to_internal_angular_frequency(a.xi_max);
    for (int i = 0; i < a.points; ++i) {
        const double t = static_cast<double>(i) / (a.points - 1);
        grid[i] = a.spacing == "linear"
                      ? lo + (hi - lo) * t
                      : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
    }
    const auto samples =
        dielectric::tabulate(table, omega_xx, grid, resolve_threads(g.threads));

    std::string text = "xi_rad_s,eps_xx,eps_zz\n";
    for (const auto& s : samples) {
        text += sweep::format_scientific(units::to_rad_per_s(s.xi));
        text += ',';
        text += sweep::format_scientific(s.eps_xx);
        text += ',';
        text += sweep::format_scientific(s.eps_zz);
        text += '\n';
    }
    emit(text, g.out);
    return kExitOk;
}

struct ForceArgs {
    double thickness_nm = 0.0;
    double omega_p = 0.0;
    double ell_nm = 0.0;
};

int cmd_force(const GlobalOptions& g, const ForceArgs& a) {
    const auto film = qwell::FilmSpec::from_nm_and_omega_p(a.thickness_nm,
                                                           a.omega_p);
    const auto result = lifshitz::compare(
        film, units::to_internal_length(a.ell_nm), compare_options(g));
    nlohmann::json j{
        {"F_Q_Pa", units::force_to_pascal(result.f_quantized)},
        {"F_P_Pa", units::force_to_pascal(result.f_plasma)},
        {"F_CAS_Pa", units::force_to_pascal(result.f_casimir)},
        {"eta_Q", result.eta_q},
        {"eta_P", result.eta_p},
        {"delta", result.delta},
        {"converged", result.converged},
    };
    emit(j.dump(2) + "\n", g.out);
    return kExitOk;
}

struct FigureArgs {
    std::string id;
    std::string out_dir = ".";
    int points_override = 0;
};

int cmd_figure(const GlobalOptions& g, const FigureArgs& a) {
    auto specs = sweep::figure_preset(a.id);
    const int workers = resolve_threads(g.threads);

    std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    nlohmann::json meta = nlohmann::json::array();
    long succeeded = 0, total = 0;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        sweep::SweepSpec spec = specs[c];
        spec.options = compare_options(g);
        spec.workers = workers;
        if (a.points_override > 1 && spec.explicit_grid.empty())
            spec.points = a.points_override;

        const auto table = sweep::run_sweep(spec);
        const auto path =
            dir / (a.id + "_curve" + std::to_string(c + 1) + ".csv");
        sweep::write_table(table, sweep::TableFormat::Csv, path.string());

        long ok = 0;
        for (const auto& row : table.rows) ok += row.converged ? 1 : 0;
        succeeded += ok;
        total += static_cast<long>(table.rows.size());
        nlohmann::json entry = nlohmann::json::parse(table.metadata_json);
        entry["file"] = path.filename().string();
        entry["rows_converged"] = ok;
        entry["rows_total"] = table.rows.size();
        meta.push_back(std::move(entry));
    }
    {
        const auto path = dir / (a.id + "_meta.json");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw io_error("cannot open " + path.string());
        f << meta.dump(2) << '\n';
    }
    if (succeeded == 0 && total > 0) {
        std::cerr << "figure: no sweep point converged\n";
        return kExitNonConverged;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vacuum-fluctuation forces between quantized thin films"};
    app.set_version_flag("--version", casfilm::version_string());
    app.set_config("--config");
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--rel-tol", g.rel_tol,
                   "relative quadrature tolerance (default 1e-6)");
    app.add_option("--max-levels", g.max_levels,
                   "quadrature panel-split budget");
    app.add_option("--threads", g.threads,
                   "worker count (default: hardware, capped by "
                   "CASFILM_MAX_THREADS)");
    app.add_option("--omega-p-convention", g.convention,
                   "plasma frequency of the quantized gas: sqrt|linear")
        ->check(CLI::IsMember({"sqrt", "linear"}));
    app.add_option("--optical-thickness", g.optical_thickness,
                   "slab thickness in the reflection factors: D|d")
        ->check(CLI::IsMember({"D", "d"}));
    app.add_option("--out", g.out, "output file (default: standard out)");
    app.add_option("--format", g.format, "table format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    WellArgs wa;
    auto* well = app.add_subcommand("well", "solve the confined electron gas");
    well->add_option("--thickness-nm", wa.thickness_nm, "ion-slab thickness D")
        ->required();
    well->add_option("--omega-p", wa.omega_p, "bulk plasma frequency [rad/s]");
    well->add_option("--n0-nm3", wa.n0_nm3, "background density [nm^-3]");

    EpsilonArgs ea;
    auto* epsilon =
        app.add_subcommand("epsilon", "tabulate the dielectric tensor");
    epsilon->add_option("--thickness-nm", ea.thickness_nm, "ion-slab thickness D")
        ->required();
    epsilon->add_option("--omega-p", ea.omega_p, "bulk plasma frequency [rad/s]")
        ->required();
    epsilon->add_option("--xi-min", ea.xi_min, "lowest xi [rad/s]")->required();
    epsilon->add_option("--xi-max", ea.xi_max, "highest xi [rad/s]")->required();
    epsilon->add_option("--points", ea.points, "grid size (default 200)");
    epsilon->add_option("--spacing", ea.spacing, "grid spacing: log|linear")
        ->check(CLI::IsMember({"log", "linear"}));

    ForceArgs fa;
    auto* force = app.add_subcommand("force", "single-point force comparison");
    force->add_option("--thickness-nm", fa.thickness_nm, "ion-slab thickness D")
        ->required();
    force->add_option("--omega-p", fa.omega_p, "bulk plasma frequency [rad/s]")
        ->required();
    force->add_option("--ell-nm", fa.ell_nm, "surface separation [nm]")
        ->required();

    FigureArgs ga;
    auto* figure = app.add_subcommand("figure", "run a preset sweep family");
    figure->add_option("--id", ga.id, "fig1|fig3|fig4|fig5|fig6")->required();
    figure->add_option("--out-dir", ga.out_dir, "output directory (default .)");
    figure->add_option("--points", ga.points_override,
                       "override the per-curve point count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (well->parsed()) return cmd_well(g, wa);
        if (epsilon->parsed()) return cmd_epsilon(g, ea);
        if (force->parsed()) return cmd_force(g, fa);
        if (figure->parsed()) return cmd_figure(g, ga);
        std::cerr << app.help();
        return kExitInvalid;
    } catch (const casfilm::convergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConverged;
    } catch (const casfilm::no_bound_state_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConverged;
    } catch (const casfilm::precision_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}
