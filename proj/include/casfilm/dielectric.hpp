#pragma once

#include <vector>

#include "casfilm/quantum_well.hpp"

// Anisotropic dielectric tensor of the quantized film on the imaginary
// frequency axis.  The lateral response is a bare plasma term; the normal
// response collects inter-sub-band transitions whose f-sum exactly
// compensates the Drude divergence, leaving a finite static limit.  The
// production evaluator therefore works with the cancellation-free paired
// form
//
//   eps_zz(i xi) = 1 + (8 pi e^2 / d m^2) sum_pairs (dN C / dE) hbar^2
//                                                   / (dE^2 + hbar^2 xi^2)
//
// while the literal two-term form survives only as a test oracle.

namespace casfilm::dielectric {

struct Transition {
    int n, n_prime;    // n occupied, n' > n, n + n' odd
    double delta_e;    // E_n' - E_n > 0
    double delta_n;    // N2D_n - N2D_n' >= 0
    double coupling;   // |<n'|p_z|n>|^2
};

struct TransitionTable {
    std::vector<Transition> rows;
    // flattened for the hot evaluation loop:
    //   weight = dN C / dE,   gap_sq = dE^2
    std::vector<double> weight;
    std::vector<double> gap_sq;
    double width = 0.0;
    double plasma_frequency_sq = 0.0;   // 4 pi e^2 N / m of the quantized gas
    double static_value = 0.0;          // eps_zz(0) from the paired sum
    double sum_rule_residual = 0.0;
    int n_truncation = 0;               // largest n' kept
};

/// Lateral permittivity on the imaginary axis: 1 + omega_p^2 / xi^2.
double eps_xx_imag(double xi, double omega_p);

/// Assemble the transition list for an occupied well, extending each
/// occupied band's final-state ladder until the estimated omitted tail
/// of the f-sum is below rel_tail_tol of the total.  The achieved
/// sum-rule residual is recorded on the table.
TransitionTable build_transition_table(const qwell::QuantizedWell& well,
                                       double rel_tail_tol = 1e-8);

/// Normal permittivity on the imaginary axis, paired form.  Real, >= 1,
/// strictly decreasing in xi, finite as xi -> 0.
double eps_zz_imag(double xi, const TransitionTable& table);

/// Closed-form static limit:
///   eps_zz(0) = 1 + (d m_F^2 / 6 pi^2 a0)
///               * [ 15 (S4 - S2/m_F^2) + pi^2 (m_0 - m_F^2 S2) / m_F^2 ]
/// with S_k = sum_{n<=m_0} n^-k.
double eps_zz_static(const qwell::QuantizedWell& well);

/// Literal two-term evaluation (Drude term minus the ordered transition
/// sum), kept as an independent oracle.  Suffers catastrophic
/// cancellation as xi -> 0; refuses xi < 1e-3 * omega_p.
double eps_zz_direct(double xi, const qwell::QuantizedWell& well,
                     int n_trunc);

/// Tabulate (xi, eps_xx, eps_zz) on a frequency grid.  Rows are computed
/// independently (parallel when OpenMP is enabled) and returned in grid
/// order.
struct DielectricSample {
    double xi;      // atomic angular frequency
    double eps_xx;
    double eps_zz;
};
std::vector<DielectricSample> tabulate(const TransitionTable& table,
                                       double omega_p_xx,
                                       const std::vector<double>& xi_grid,
                                       int workers = 0);

} // namespace casfilm::dielectric
