#pragma once

#include <numbers>

namespace echo2d::units {

// Energies are carried in cm^-1 and times in fs throughout the public API.

inline constexpr double kSpeedOfLight = 2.99792458e-5;   // cm / fs
inline constexpr double kBoltzmann = 0.695034800;        // cm^-1 / K

/// Angular frequency (rad/fs) of one wavenumber.
inline constexpr double kRadPerFsPerWavenumber = 2.0 * std::numbers::pi * kSpeedOfLight;

/// Convert a time in fs to the reciprocal-wavenumber unit used internally
/// (phase = energy[cm^-1] * time[cm]).
inline constexpr double fs_to_cm(double t_fs) { return t_fs * kRadPerFsPerWavenumber; }
inline constexpr double cm_to_fs(double t_cm) { return t_cm / kRadPerFsPerWavenumber; }

inline constexpr double wavenumber_to_rad_per_fs(double nu) { return nu * kRadPerFsPerWavenumber; }
inline constexpr double rad_per_fs_to_wavenumber(double w) { return w / kRadPerFsPerWavenumber; }

/// Inverse temperature 1/(k_B T) in cm.
inline constexpr double beta_from_kelvin(double kelvin) { return 1.0 / (kBoltzmann * kelvin); }

}  // namespace echo2d::units
