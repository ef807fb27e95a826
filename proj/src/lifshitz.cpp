#include "casfilm/lifshitz.hpp"

#include <cmath>
#include <stdexcept>

#include "casfilm/constants.hpp"
#include "casfilm/errors.hpp"

namespace casfilm::lifshitz {

namespace {
constexpr double kPi = 3.14159265358979323846;

double light_speed() { return units::atomic.c; }
} // namespace

FilmResponse FilmResponse::plasma(double omega_p) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("FilmResponse: omega_p must be positive");
    FilmResponse r;
    r.omega_p_ = omega_p;
    return r;
}

FilmResponse FilmResponse::quantized(
    std::shared_ptr<const dielectric::TransitionTable> table,
    double omega_p_xx) {
    if (!table || table->weight.empty())
        throw std::invalid_argument("FilmResponse: empty transition table");
    if (!(omega_p_xx > 0.0) || !std::isfinite(omega_p_xx))
        throw std::invalid_argument("FilmResponse: omega_p must be positive");
    FilmResponse r;
    r.table_ = std::move(table);
    r.omega_p_ = omega_p_xx;
    return r;
}

void FilmResponse::eval(double xi, double& eps_xx, double& eps_zz) const {
    eps_xx = dielectric::eps_xx_imag(xi, omega_p_);
    eps_zz = table_ ? dielectric::eps_zz_imag(xi, *table_) : eps_xx;
}

WaveFactors wave_factors(double k, double xi, double eps_xx, double eps_zz) {
    const double c = light_speed();
    const double q = xi / c;
    const double k2 = k * k;
    const double q2 = q * q;
    WaveFactors wf;
    wf.gamma = std::sqrt(k2 + q2);
    wf.gamma_te = std::sqrt(k2 + q2 * eps_xx);
    wf.gamma_tm = std::sqrt((k2 / eps_zz + q2) * eps_xx);
    return wf;
}

ReflectionAmplitudes reflection_amplitudes(const WaveFactors& wf,
                                           double eps_xx) {
    ReflectionAmplitudes r;
    r.tm = (wf.gamma_tm - wf.gamma * eps_xx) / (wf.gamma_tm + wf.gamma * eps_xx);
    r.te = (wf.gamma_te - wf.gamma) / (wf.gamma_te + wf.gamma);
    return r;
}

double slab_amplitude(double rho, double gamma_slab, double thickness,
                      double gamma, double separation) {
    // -expm1 keeps the thin-slab limit accurate
    const double x = 2.0 * gamma_slab * thickness;
    const double decay = std::exp(-x);
    const double opacity = -std::expm1(-x);
    return rho * opacity / (1.0 - rho * rho * decay) *
           std::exp(-gamma * separation);
}

double casimir_ideal(double separation) {
    if (!(separation > 0.0) || !std::isfinite(separation))
        throw std::invalid_argument("casimir_ideal: separation must be positive");
    const double l2 = separation * separation;
    return -light_speed() * kPi * kPi / (240.0 * l2 * l2);
}

double min_separation() { return units::to_internal_length(0.1); }

namespace {

struct CachedResponse {
    const FilmResponse& response;
    mutable double xi = -1.0;
    mutable double eps_xx = 1.0;
    mutable double eps_zz = 1.0;
    void refresh(double x) const {
        if (x != xi) {
            response.eval(x, eps_xx, eps_zz);
            xi = x;
        }
    }
};

double mode_term(double q) {
    // q^2/(1-q^2); |q| < 1 is guaranteed by construction and asserted
    const double q2 = q * q;
    if (!(q2 < 1.0))
        throw precision_error("force: slab amplitude left the unit disk");
    return q2 / (1.0 - q2);
}

} // namespace

double force(const FilmResponse& response, const Geometry& geom,
             const quad::IntegrationSettings& settings,
             ForceDiagnostics* diag) {
    if (!(geom.optical_thickness > 0.0) || !std::isfinite(geom.optical_thickness))
        throw std::invalid_argument("force: thickness must be positive");
    if (!std::isfinite(geom.separation) || geom.separation < min_separation())
        throw std::invalid_argument(
            "force: separation below the model's validity floor");

    const CachedResponse cache{response};
    const double ell = geom.separation;
    const double thickness = geom.optical_thickness;

    auto integrand = [&](double k, double xi) {
        cache.refresh(xi);
        const WaveFactors wf = wave_factors(k, xi, cache.eps_xx, cache.eps_zz);
        const ReflectionAmplitudes rho = reflection_amplitudes(wf, cache.eps_xx);
        const double q_tm =
            slab_amplitude(rho.tm, wf.gamma_tm, thickness, wf.gamma, ell);
        const double q_te =
            slab_amplitude(rho.te, wf.gamma_te, thickness, wf.gamma, ell);
        return k * wf.gamma * (mode_term(q_tm) + mode_term(q_te));
    };

    const double k_scale = 1.0 / (2.0 * ell);
    const double xi_scale = light_speed() / (2.0 * ell);
    quad::IntegrationResult r =
        quad::integrate_2d_semi_infinite(integrand, k_scale, xi_scale, settings);
    if (diag) diag->quadrature = r;
    if (!r.converged)
        throw convergence_error("force: quadrature budget exhausted");
    return -r.value / (2.0 * kPi * kPi);
}

ForceResult compare(const qwell::FilmSpec& spec, double separation,
                    const CompareOptions& options) {
    const qwell::QuantizedWell well = qwell::solve_effective_width(spec);
    auto table = std::make_shared<const dielectric::TransitionTable>(
        dielectric::build_transition_table(well, options.table_tail_tol));
    const double omega_xx =
        qwell::effective_plasma_frequency(well, options.convention);

    const FilmResponse quantized = FilmResponse::quantized(table, omega_xx);
    const FilmResponse plasma =
        FilmResponse::plasma(spec.bulk_plasma_frequency());

    const Geometry geom_q{options.optical_thickness_effective ? well.width
                                                              : spec.thickness,
                          separation};
    const Geometry geom_p{spec.thickness, separation};

    ForceResult out;
    out.f_quantized =
        force(quantized, geom_q, options.quadrature, &out.diag_quantized);
    out.f_plasma = force(plasma, geom_p, options.quadrature, &out.diag_plasma);
    out.f_casimir = casimir_ideal(separation);
    out.eta_q = out.f_quantized / out.f_casimir;
    out.eta_p = out.f_plasma / out.f_casimir;
    out.delta = (out.f_plasma - out.f_quantized) / out.f_plasma;
    out.converged = out.diag_quantized.quadrature.converged &&
                    out.diag_plasma.quadrature.converged;
    return out;
}

} // namespace casfilm::lifshitz
