#pragma once

#include <vector>

// Free-standing film as an infinite square well: the electron gas is
// confined over an effective width d chosen so that the quantized charge
// over d neutralizes the ionic charge over the nominal slab thickness D.
// All quantities are in atomic units; constructors taking nm / rad/s
// convert at the boundary.

namespace casfilm::qwell {

/// Physical input: ion-slab thickness and positive background density,
/// or equivalently the bulk plasma frequency.
struct FilmSpec {
    double thickness;     // D, bohr
    double bulk_density;  // N0, bohr^-3

    static FilmSpec from_nm_and_omega_p(double thickness_nm,
                                        double omega_p_rad_s);
    static FilmSpec from_nm_and_density(double thickness_nm,
                                        double n0_per_nm3);

    double fermi_wavevector() const;        // k_F = (3 pi^2 N0)^(1/3)
    double fermi_energy() const;            // hbar^2 k_F^2 / 2m
    double bulk_plasma_frequency() const;   // sqrt(4 pi e^2 N0 / m)
};

/// Solved confinement state.  Immutable after construction.
struct QuantizedWell {
    double width;             // effective well width d, bohr
    double m_f;               // k_F d / pi
    int m_0;                  // floor(m_f): highest occupied sub-band
    double fermi_wavevector;
    double fermi_energy;      // held at the bulk value
    double bulk_density;      // N0 implied by k_F
    double density;           // quantized density N = sum / d
    double plasma_frequency_sq;              // 4 pi e^2 N / m
    std::vector<double> subband_energies;    // n = 1 .. m_0 + 1
    std::vector<double> areal_densities;     // n = 1 .. m_0
};

enum class PlasmaConvention {
    SqrtDensityRatio,    // omega_p = Omega_p sqrt(N/N0); consistent with
                         // omega_p^2 = 4 pi e^2 N / m
    LinearDensityRatio,  // omega_p = Omega_p N/N0
};

struct WellSolveDiagnostics {
    int sign_changes = 0;
    int bisection_steps = 0;
    double residual = 0.0;   // |d G - D| / D
};

/// Occupied-fraction factor: N/N0 for a well with m_F = k_F d / pi.
/// Defined for m_F >= 1; equals 0 at the band edge and tends to 1 in
/// the bulk limit.
double g_factor(double m_f);

/// Bottom of sub-band n for well width d: hbar^2 pi^2 n^2 / (2 m d^2).
double subband_energy(int n, double width);

/// |<n'|p_z|n>|^2 between sub-bands of an infinite well of width d.
/// Zero when n + n' is even (including the diagonal); otherwise
/// 16 hbar^2 n^2 n'^2 / (d^2 (n^2 - n'^2)^2).
double momentum_matrix_element_sq(int n, int n_prime, double width);

/// Solve d * G(k_F d / pi) = D by scanning the intervals
/// d in (n pi/k_F, (n+1) pi/k_F) and bisecting inside each bracket.
/// The smallest root is returned; the diagnostic counts sign changes
/// seen during the scan (one, unless something is badly wrong).
QuantizedWell solve_effective_width(const FilmSpec& spec,
                                    WellSolveDiagnostics* diag = nullptr);

/// Build a well directly from a chosen width and Fermi wavevector,
/// bypassing the self-consistency equation.  The implied ion-slab
/// thickness is d * G(m_F).
QuantizedWell make_well(double width, double fermi_wavevector);

/// N = (1/d) sum_n (m / pi hbar^2) (E_F - E_n) over occupied sub-bands,
/// with spin degeneracy 2 included in the density of states.
double quantized_density(const QuantizedWell& well, double fermi_energy);

/// Plasma frequency of the quantized gas under the chosen convention.
double effective_plasma_frequency(const QuantizedWell& well,
                                  PlasmaConvention convention);

} // namespace casfilm::qwell
