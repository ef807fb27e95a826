// Wall-clock comparison of the OpenMP-parallel kernels against their
// single-worker runs: sweep evaluation, dielectric tabulation, and one
// adaptive force integral for scale.

#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include "casfilm/constants.hpp"
#include "casfilm/dielectric.hpp"
#include "casfilm/lifshitz.hpp"
#include "casfilm/quantum_well.hpp"
#include "casfilm/sweep.hpp"

using namespace casfilm;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class F>
double timed(const char* name, F&& f) {
    const auto t0 = clock_type::now();
    f();
    const double s = seconds_since(t0);
    std::printf("  %-34s %8.3f s\n", name, s);
    return s;
}

} // namespace

int main() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    std::printf("casfilm bench (hardware workers: %d)\n", hw);

    // force sweep kernel: independent points across a worker pool
    sweep::SweepSpec spec;
    spec.axis = sweep::Axis::Separation;
    spec.min = 10.0;
    spec.max = 1000.0;
    spec.points = 12;
    spec.spacing = sweep::Spacing::Log;
    spec.thickness_nm = 5.0;
    spec.omega_p_rad_s = 1e15;
    spec.outputs = {"F_Q", "F_P", "delta"};

    std::printf("force sweep, %d points:\n", spec.points);
    spec.workers = 1;
    const double serial = timed("serial reference (workers=1)",
                                [&] { sweep::run_sweep(spec); });
    spec.workers = hw;
    const double parallel = timed("OpenMP (workers=hw)",
                                  [&] { sweep::run_sweep(spec); });
    std::printf("  speedup: %.2fx\n", serial / parallel);

    // dielectric tabulation kernel
    const auto film = qwell::FilmSpec::from_nm_and_omega_p(5.0, 1e16);
    const auto well = qwell::solve_effective_width(film);
    const auto table = dielectric::build_transition_table(well, 1e-10);
    const double omega = std::sqrt(well.plasma_frequency_sq);
    std::vector<double> grid;
    for (int i = 0; i < 200000; ++i)
        grid.push_back(omega * std::exp(-6.0 + 12.0 * i / 199999.0));

    std::printf("epsilon tabulation, %zu points, %zu transitions:\n",
                grid.size(), table.weight.size());
    const double ts = timed("serial reference (workers=1)", [&] {
        dielectric::tabulate(table, omega, grid, 1);
    });
    const double tp = timed("OpenMP (workers=hw)", [&] {
        dielectric::tabulate(table, omega, grid, hw);
    });
    std::printf("  speedup: %.2fx\n", ts / tp);

    // single adaptive force integral for scale
    const auto response = lifshitz::FilmResponse::plasma(
        units::to_internal_angular_frequency(1e16));
    const lifshitz::Geometry geom{units::to_internal_length(10.0),
                                  units::to_internal_length(100.0)};
    lifshitz::ForceDiagnostics diag;
    timed("one adaptive force integral", [&] {
        lifshitz::force(response, geom, {}, &diag);
    });
    std::printf("  integrand evaluations: %lld\n",
                diag.quadrature.evaluations);
    return 0;
}
