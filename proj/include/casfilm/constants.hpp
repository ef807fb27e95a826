#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Internal unit system: Hartree atomic units with Gaussian electromagnetic
// conventions, so hbar = m_e = e = a0 = 1 and c = 1/alpha.  Every formula
// in the code carries its 4*pi*e^2 factors explicitly.  The API boundary
// speaks nm, rad/s, eV and Pa; the five SI scales below are the only
// numbers that ever cross it (CODATA 2018).

namespace casfilm::units {

struct PhysicalConstants {
    double hbar;
    double c;
    double e;
    double m_e;
    double a0;
};

inline constexpr double bohr_radius_m      = 5.29177210903e-11;
inline constexpr double hartree_J          = 4.3597447222071e-18;
inline constexpr double hbar_J_s           = 1.054571817e-34;
inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double electron_volt_J    = 1.602176634e-19;

inline constexpr double atomic_time_s = hbar_J_s / hartree_J;
inline constexpr double light_speed_au =
    speed_of_light_m_s * atomic_time_s / bohr_radius_m;

inline constexpr PhysicalConstants atomic{1.0, light_speed_au, 1.0, 1.0, 1.0};

inline constexpr double bohr_in_nm = bohr_radius_m * 1e9;
inline constexpr double pressure_au_Pa =
    hartree_J / (bohr_radius_m * bohr_radius_m * bohr_radius_m);
inline constexpr double hartree_eV = hartree_J / electron_volt_J;

/// Identifier of the constant set; recorded in every output table.
inline const char* constants_version() { return "CODATA2018-au/1"; }

namespace detail {
inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(what) + ": non-finite value");
}
} // namespace detail

/// nm -> bohr.  Rejects negative or non-finite input.
inline double to_internal_length(double x_nm) {
    detail::require_finite(x_nm, "length");
    if (x_nm < 0.0) throw std::invalid_argument("length: negative value");
    return x_nm * (1e-9 / bohr_radius_m);
}

/// bohr -> nm.
inline double to_nm(double x_bohr) {
    detail::require_finite(x_bohr, "length");
    return x_bohr * bohr_in_nm;
}

/// rad/s -> atomic angular frequency.  Rejects negative or non-finite input.
inline double to_internal_angular_frequency(double omega_rad_s) {
    detail::require_finite(omega_rad_s, "angular frequency");
    if (omega_rad_s < 0.0)
        throw std::invalid_argument("angular frequency: negative value");
    return omega_rad_s * atomic_time_s;
}

/// atomic angular frequency -> rad/s.
inline double to_rad_per_s(double omega_au) {
    detail::require_finite(omega_au, "angular frequency");
    return omega_au / atomic_time_s;
}

/// force per unit area, atomic units -> Pa.  Sign preserving.
inline double force_to_pascal(double f_au) {
    detail::require_finite(f_au, "force per area");
    return f_au * pressure_au_Pa;
}

/// energy, hartree -> eV.
inline double to_electron_volt(double e_au) {
    detail::require_finite(e_au, "energy");
    return e_au * hartree_eV;
}

/// energy, hartree -> J.
inline double to_joule(double e_au) {
    detail::require_finite(e_au, "energy");
    return e_au * hartree_J;
}

} // namespace casfilm::units
