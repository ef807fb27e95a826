#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casfilm/lifshitz.hpp"

// Declarative parameter sweeps over thickness, plasma frequency and
// separation.  Points are independent tasks; rows land in pre-assigned
// slots so tables are bit-identical for any worker count.

namespace casfilm::sweep {

enum class Axis { ThicknessD, PlasmaFrequency, Separation };
enum class Spacing { Linear, Log };
enum class AxisReport {
    AxisValue,    // raw axis value (nm or rad/s)
    DKfOverPi,    // report d k_F / pi of the solved well instead
};

struct SweepSpec {
    Axis axis = Axis::ThicknessD;
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    Spacing spacing = Spacing::Linear;
    std::vector<double> explicit_grid;  // when non-empty, overrides the range

    // fixed parameters; the one matching `axis` is ignored
    double thickness_nm = 0.0;
    double omega_p_rad_s = 0.0;
    double separation_nm = 0.0;

    // subset of {d, m_F, N_ratio, eps_zz_0, F_Q, F_P, F_CAS,
    //            eta_Q, eta_P, delta}
    std::vector<std::string> outputs;

    lifshitz::CompareOptions options{};
    int workers = 0;                    // 0: all available
    AxisReport axis_report = AxisReport::AxisValue;
    std::string axis_column;            // defaults per axis when empty
    std::string label;
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<double> values;
    bool converged = false;
    std::string error;
};

struct SweepTable {
    std::vector<std::string> columns;   // axis column first
    std::vector<SweepRow> rows;
    std::string metadata_json;          // reproduces the table bit-identically
};

std::vector<double> make_grid(const SweepSpec& spec);

SweepTable run_sweep(const SweepSpec& spec);

/// Curve presets reproducing the published sweeps; one spec per curve.
/// Known ids: fig1, fig3, fig4, fig5, fig6.
std::vector<SweepSpec> figure_preset(const std::string& id);

enum class TableFormat { Csv, Json };

void write_table(const SweepTable& table, TableFormat format,
                 std::ostream& out);
void write_table(const SweepTable& table, TableFormat format,
                 const std::string& path);

/// Scientific notation with 9 significant digits; the bit-exact cell
/// format of every CSV this tool writes.
std::string format_scientific(double v);

} // namespace casfilm::sweep
