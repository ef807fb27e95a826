#include "casfilm/dielectric.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casfilm/errors.hpp"

namespace casfilm::dielectric {

namespace {
constexpr double kPi = 3.14159265358979323846;

double areal_density(const qwell::QuantizedWell& well, int n) {
    if (n <= well.m_0) return well.areal_densities[n - 1];
    return 0.0;
}
} // namespace

double eps_xx_imag(double xi, double omega_p) {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("eps_xx_imag: xi must be positive");
    if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("eps_xx_imag: omega_p must be >= 0");
    const double r = omega_p / xi;
    return 1.0 + r * r;
}

TransitionTable build_transition_table(const qwell::QuantizedWell& well,
                                       double rel_tail_tol) {
    if (!(rel_tail_tol > 0.0 && rel_tail_tol < 1.0))
        throw std::invalid_argument(
            "build_transition_table: rel_tail_tol must be in (0, 1)");

    const double d = well.width;
    TransitionTable t;
    t.width = d;
    t.plasma_frequency_sq = well.plasma_frequency_sq;

    // Total pair budget.  The per-band ladders stop on an analytic
    // n'^-4 tail estimate of the omitted f-sum weight, with the
    // tolerance budget split evenly across occupied bands.
    constexpr long long max_pairs = 4'000'000;
    const double per_band_tol = rel_tail_tol / well.m_0;

    double weight_total = 0.0;
    for (int n = 1; n <= well.m_0; ++n) {
        const double n2d_n = areal_density(well, n);
        const double e_n = well.subband_energies[n - 1];
        for (int np = n + 1;; np += 2) {
            const double dn = n2d_n - areal_density(well, np);
            const double c = qwell::momentum_matrix_element_sq(n, np, d);
            const double de = qwell::subband_energy(np, d) - e_n;
            const double w = dn * c / de;
            t.rows.push_back(Transition{n, np, de, dn, c});
            t.weight.push_back(w);
            t.gap_sq.push_back(de * de);
            weight_total += w;
            t.n_truncation = std::max(t.n_truncation, np);

            // omitted tail of sum_{n''>np} w ~ w(np) * np / 6
            const double tail = w * np / 6.0;
            if (np > 3 * n + 30 && tail <= per_band_tol * weight_total) break;
            if (static_cast<long long>(t.rows.size()) >= max_pairs)
                throw convergence_error(
                    "build_transition_table: pair budget exhausted before "
                    "tail tolerance " + std::to_string(rel_tail_tol));
        }
    }

    const double pref = 8.0 * kPi / d;
    double static_sum = 0.0;
    for (std::size_t i = 0; i < t.weight.size(); ++i)
        static_sum += t.weight[i] / t.gap_sq[i];
    t.static_value = 1.0 + pref * static_sum;
    t.sum_rule_residual =
        std::abs(t.plasma_frequency_sq - pref * weight_total) /
        t.plasma_frequency_sq;
    return t;
}

double eps_zz_imag(double xi, const TransitionTable& table) {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("eps_zz_imag: xi must be positive");
    if (table.weight.empty() || table.width <= 0.0)
        throw std::invalid_argument("eps_zz_imag: invalid transition table");
    const double xi2 = xi * xi;
    double sum = 0.0;
    const std::size_t m = table.weight.size();
    const double* w = table.weight.data();
    const double* g = table.gap_sq.data();
    for (std::size_t i = 0; i < m; ++i) sum += w[i] / (g[i] + xi2);
    return 1.0 + 8.0 * kPi / table.width * sum;
}

double eps_zz_static(const qwell::QuantizedWell& well) {
    const double mf = well.m_f;
    const int m0 = well.m_0;
    double s2 = 0.0, s4 = 0.0;
    for (int n = 1; n <= m0; ++n) {
        const double inv2 = 1.0 / (static_cast<double>(n) * n);
        s2 += inv2;
        s4 += inv2 * inv2;
    }
    const double mf2 = mf * mf;
    const double bracket =
        15.0 * (s4 - s2 / mf2) + kPi * kPi * (m0 - mf2 * s2) / mf2;
    return 1.0 + well.width * mf2 / (6.0 * kPi * kPi) * bracket;
}

double eps_zz_direct(double xi, const qwell::QuantizedWell& well,
                     int n_trunc) {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("eps_zz_direct: xi must be positive");
    const double omega_p = std::sqrt(well.plasma_frequency_sq);
    if (xi < 1e-3 * omega_p)
        throw precision_error(
            "eps_zz_direct: xi below 1e-3 omega_p, literal form loses the "
            "Drude cancellation");

    const double d = well.width;
    const std::complex<double> ihw(0.0, xi);  // hbar omega at omega = i xi
    std::complex<double> sum = 0.0;
    for (int n = 1; n <= well.m_0; ++n) {
        const double e_n = well.subband_energies[n - 1];
        const double n2d_n = areal_density(well, n);
        for (int np = n + 1; np <= n_trunc; ++np) {
            if ((n + np) % 2 == 0) continue;
            const double e_np = qwell::subband_energy(np, d);
            const double dn = n2d_n - areal_density(well, np);
            const double c = qwell::momentum_matrix_element_sq(n, np, d);
            // both ordered terms, evaluated literally
            sum += dn * c / (e_n - e_np - ihw);
            sum += -dn * c / (e_np - e_n - ihw);
        }
    }
    const double xi2 = xi * xi;
    const double drude = well.plasma_frequency_sq / xi2;
    // at omega = i xi the prefactor -4 pi e^2/(d m^2 omega^2) -> +4 pi/(d xi^2)
    return 1.0 + drude + 4.0 * kPi / (d * xi2) * sum.real();
}

std::vector<DielectricSample> tabulate(const TransitionTable& table,
                                       double omega_p_xx,
                                       const std::vector<double>& xi_grid,
                                       int workers) {
    std::vector<DielectricSample> out(xi_grid.size());
#ifdef _OPENMP
    const int nt = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const double xi = xi_grid[i];
        out[i] = DielectricSample{xi, eps_xx_imag(xi, omega_p_xx),
                                  eps_zz_imag(xi, table)};
    }
    return out;
}

} // namespace casfilm::dielectric
