#pragma once

namespace qdvr {

inline constexpr const char* kVersion = "0.1.0";

// Atomic units throughout: lengths in bohr, energies in hartree,
// times in hbar/hartree, fields in hartree/(e*bohr).
namespace units {

inline constexpr double kBohrPerAngstrom = 1.8897261254578281;
inline constexpr double kFsPerAtomicTime = 0.024188843265857;
inline constexpr double kEvPerHartree = 27.211386245988;
inline constexpr double kAtomicIntensity = 3.50944758e16;  // W/cm^2
inline constexpr double kProtonMass = 1836.15267343;       // electron masses

inline double angstrom_to_bohr(double a) { return a * kBohrPerAngstrom; }
inline double fs_to_au(double t) { return t / kFsPerAtomicTime; }
inline double au_to_fs(double t) { return t * kFsPerAtomicTime; }
inline double ev_to_hartree(double e) { return e / kEvPerHartree; }

}  // namespace units
}  // namespace qdvr
