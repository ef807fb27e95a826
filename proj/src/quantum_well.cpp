#include "casfilm/quantum_well.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "casfilm/constants.hpp"
#include "casfilm/errors.hpp"

namespace casfilm::qwell {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// m_F * G(m_F); strictly increasing for m_F >= 1, zero at m_F = 1.
double scaled_neutrality(double m_f) { return m_f * g_factor(m_f); }
} // namespace

FilmSpec FilmSpec::from_nm_and_omega_p(double thickness_nm,
                                       double omega_p_rad_s) {
    require(std::isfinite(thickness_nm) && thickness_nm > 0.0,
            "FilmSpec: thickness must be positive");
    require(std::isfinite(omega_p_rad_s) && omega_p_rad_s > 0.0,
            "FilmSpec: plasma frequency must be positive");
    const double omega = units::to_internal_angular_frequency(omega_p_rad_s);
    return FilmSpec{units::to_internal_length(thickness_nm),
                    omega * omega / (4.0 * kPi)};
}

FilmSpec FilmSpec::from_nm_and_density(double thickness_nm,
                                       double n0_per_nm3) {
    require(std::isfinite(thickness_nm) && thickness_nm > 0.0,
            "FilmSpec: thickness must be positive");
    require(std::isfinite(n0_per_nm3) && n0_per_nm3 > 0.0,
            "FilmSpec: density must be positive");
    const double nm3 = units::bohr_in_nm * units::bohr_in_nm *
                       units::bohr_in_nm;
    return FilmSpec{units::to_internal_length(thickness_nm),
                    n0_per_nm3 * nm3};
}

double FilmSpec::fermi_wavevector() const {
    return std::cbrt(3.0 * kPi * kPi * bulk_density);
}

double FilmSpec::fermi_energy() const {
    const double kf = fermi_wavevector();
    return 0.5 * kf * kf;
}

double FilmSpec::bulk_plasma_frequency() const {
    return std::sqrt(4.0 * kPi * bulk_density);
}

double g_factor(double m_f) {
    if (!std::isfinite(m_f)) throw std::invalid_argument("g_factor: non-finite m_F");
    if (m_f < 1.0)
        throw band_edge_error("g_factor: m_F < 1, no occupied sub-band");
    const double m0 = std::floor(m_f);
    return 1.5 * m0 / m_f * (1.0 - (m0 + 1.0) * (2.0 * m0 + 1.0) / (6.0 * m_f * m_f));
}

double subband_energy(int n, double width) {
    require(n >= 1, "subband_energy: n must be >= 1");
    require(std::isfinite(width) && width > 0.0,
            "subband_energy: width must be positive");
    const double kn = static_cast<double>(n) * kPi / width;
    return 0.5 * kn * kn;
}

double momentum_matrix_element_sq(int n, int n_prime, double width) {
    require(n >= 1 && n_prime >= 1,
            "momentum_matrix_element_sq: indices must be >= 1");
    require(std::isfinite(width) && width > 0.0,
            "momentum_matrix_element_sq: width must be positive");
    if ((n + n_prime) % 2 == 0) return 0.0;  // includes n == n_prime
    const double a = static_cast<double>(n);
    const double b = static_cast<double>(n_prime);
    const double diff = b * b - a * a;
    return 16.0 * a * a * b * b / (width * width * diff * diff);
}

QuantizedWell make_well(double width, double fermi_wavevector) {
    require(std::isfinite(width) && width > 0.0,
            "make_well: width must be positive");
    require(std::isfinite(fermi_wavevector) && fermi_wavevector > 0.0,
            "make_well: Fermi wavevector must be positive");

    QuantizedWell w;
    w.width = width;
    w.fermi_wavevector = fermi_wavevector;
    w.m_f = fermi_wavevector * width / kPi;
    if (w.m_f < 1.0)
        throw band_edge_error("make_well: m_F < 1, no occupied sub-band");
    w.m_0 = static_cast<int>(std::floor(w.m_f));
    w.fermi_energy = 0.5 * fermi_wavevector * fermi_wavevector;
    w.bulk_density = fermi_wavevector * fermi_wavevector * fermi_wavevector /
                     (3.0 * kPi * kPi);

    w.subband_energies.reserve(w.m_0 + 1);
    for (int n = 1; n <= w.m_0 + 1; ++n)
        w.subband_energies.push_back(subband_energy(n, width));

    w.areal_densities.reserve(w.m_0);
    for (int n = 1; n <= w.m_0; ++n) {
        const double occ = w.fermi_energy - w.subband_energies[n - 1];
        w.areal_densities.push_back(occ > 0.0 ? occ / kPi : 0.0);
    }

    double sum = 0.0;
    for (double n2d : w.areal_densities) sum += n2d;
    w.density = sum / width;
    w.plasma_frequency_sq = 4.0 * kPi * w.density;
    return w;
}

QuantizedWell solve_effective_width(const FilmSpec& spec,
                                    WellSolveDiagnostics* diag) {
    require(std::isfinite(spec.thickness) && spec.thickness > 0.0,
            "solve_effective_width: thickness must be positive");
    require(std::isfinite(spec.bulk_density) && spec.bulk_density > 0.0,
            "solve_effective_width: density must be positive");

    const double kf = spec.fermi_wavevector();
    const double target = spec.thickness * kf / kPi;  // = m_F G(m_F) at root

    WellSolveDiagnostics local;
    WellSolveDiagnostics& d = diag ? *diag : local;
    d = WellSolveDiagnostics{};

    // scan m_F intervals (n, n+1); the residual is continuous across the
    // integer kinks, so a sign change brackets a root
    constexpr int max_interval = 50'000'000;
    double root = -1.0;
    double prev = -target;  // residual at m_F -> 1+
    for (int n = 1; n <= max_interval; ++n) {
        const double hi_val = scaled_neutrality(static_cast<double>(n) + 1.0) - target;
        if (prev <= 0.0 && hi_val >= 0.0) {
            ++d.sign_changes;
            if (root < 0.0) {
                double lo = static_cast<double>(n);
                double hi = static_cast<double>(n) + 1.0;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (scaled_neutrality(mid) - target < 0.0)
                        lo = mid;
                    else
                        hi = mid;
                    ++d.bisection_steps;
                    if (hi - lo <= 1e-15 * hi) break;
                }
                root = 0.5 * (lo + hi);
            }
        }
        if (hi_val > 0.0) break;  // scaled_neutrality is increasing
        prev = hi_val;
    }
    if (root < 0.0)
        throw no_bound_state_error(
            "solve_effective_width: no root with m_F > 1 in search range");

    const double width = kPi * root / kf;
    d.residual = std::abs(width * g_factor(root) - spec.thickness) /
                 spec.thickness;
    if (d.residual > 1e-10)
        throw convergence_error(
            "solve_effective_width: residual " + std::to_string(d.residual) +
            " above tolerance after bisection budget");

    return make_well(width, kf);
}

double quantized_density(const QuantizedWell& well, double fermi_energy) {
    if (!std::isfinite(fermi_energy))
        throw std::invalid_argument("quantized_density: non-finite E_F");
    if (fermi_energy <= subband_energy(1, well.width))
        throw band_edge_error("quantized_density: E_F at or below E_1");
    double sum = 0.0;
    for (int n = 1;; ++n) {
        const double occ = fermi_energy - subband_energy(n, well.width);
        if (occ <= 0.0) break;
        sum += occ / kPi;
    }
    return sum / well.width;
}

double effective_plasma_frequency(const QuantizedWell& well,
                                  PlasmaConvention convention) {
    const double omega_bulk = std::sqrt(4.0 * kPi * well.bulk_density);
    const double ratio = well.density / well.bulk_density;
    if (convention == PlasmaConvention::SqrtDensityRatio)
        return omega_bulk * std::sqrt(ratio);
    return omega_bulk * ratio;
}

} // namespace casfilm::qwell
