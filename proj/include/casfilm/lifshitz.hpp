#pragma once

#include <memory>

#include "casfilm/dielectric.hpp"
#include "casfilm/quadrature.hpp"
#include "casfilm/quantum_well.hpp"

// Vacuum-fluctuation force per unit area between two identical
// finite-thickness films with a uniaxial dielectric tensor, evaluated on
// the imaginary frequency axis:
//
//   F = -(hbar / 2 pi^2) int_0^inf k dk int_0^inf dxi gamma
//         [ Q_TM^2/(1 - Q_TM^2) + Q_TE^2/(1 - Q_TE^2) ]
//
// with the finite-slab amplitudes Q built from the single-interface
// reflection coefficients.  Everything here is real: on the imaginary
// axis the permittivities are >= 1 and all square roots are positive.

namespace casfilm::lifshitz {

struct Geometry {
    double optical_thickness;   // slab thickness in the e^{-2 gamma D} factors
    double separation;          // vacuum gap l
};

/// Dielectric response of one film: either the solved quantized tensor
/// or the isotropic plasma model at the bulk plasma frequency.
class FilmResponse {
public:
    static FilmResponse plasma(double omega_p);
    static FilmResponse quantized(std::shared_ptr<const dielectric::TransitionTable> table,
                                  double omega_p_xx);

    /// eps_xx(i xi), eps_zz(i xi); both >= 1 for xi > 0.
    void eval(double xi, double& eps_xx, double& eps_zz) const;

private:
    FilmResponse() = default;
    std::shared_ptr<const dielectric::TransitionTable> table_;
    double omega_p_ = 0.0;
};

struct WaveFactors {
    double gamma;      // sqrt(k^2 + xi^2/c^2)
    double gamma_te;   // sqrt(k^2 + xi^2 eps_xx / c^2)
    double gamma_tm;   // sqrt((k^2/eps_zz + xi^2/c^2) eps_xx)
};

struct ReflectionAmplitudes {
    double tm;
    double te;
};

WaveFactors wave_factors(double k, double xi, double eps_xx, double eps_zz);

ReflectionAmplitudes reflection_amplitudes(const WaveFactors& wf,
                                           double eps_xx);

/// Finite-slab amplitude including the separation factor:
///   Q = rho (1 - e^{-2 gamma_slab D}) / (1 - rho^2 e^{-2 gamma_slab D})
///       * e^{-gamma l}
double slab_amplitude(double rho, double gamma_slab, double thickness,
                      double gamma, double separation);

struct ForceDiagnostics {
    quad::IntegrationResult quadrature;
};

/// Force per unit area (atomic units, <= 0).  Throws convergence_error
/// if the quadrature budget is exhausted.
double force(const FilmResponse& response, const Geometry& geom,
             const quad::IntegrationSettings& settings = {},
             ForceDiagnostics* diag = nullptr);

/// Ideal-mirror force per unit area: -hbar c pi^2 / (240 l^4).
double casimir_ideal(double separation);

struct CompareOptions {
    qwell::PlasmaConvention convention =
        qwell::PlasmaConvention::SqrtDensityRatio;
    bool optical_thickness_effective = false;  // use d instead of D for the
                                               // quantized film's slab factor
    double table_tail_tol = 1e-8;
    quad::IntegrationSettings quadrature{};
};

struct ForceResult {
    double f_quantized = 0.0;   // atomic units, <= 0
    double f_plasma = 0.0;
    double f_casimir = 0.0;
    double eta_q = 0.0;         // F_Q / F_CAS
    double eta_p = 0.0;         // F_P / F_CAS
    double delta = 0.0;         // (F_P - F_Q) / F_P
    bool converged = false;
    ForceDiagnostics diag_quantized{};
    ForceDiagnostics diag_plasma{};
};

/// Solve the well for `spec`, then evaluate the quantized-tensor force and
/// the isotropic plasma-model force in the same geometry.
ForceResult compare(const qwell::FilmSpec& spec, double separation,
                    const CompareOptions& options = {});

/// Smallest separation the continuum model is allowed to see (bohr).
double min_separation();

} // namespace casfilm::lifshitz
