#pragma once

// Unit system: nm / ps / kJ·mol⁻¹ / amu / e / K.
// With these units amu·nm²/ps² = kJ/mol exactly, so integrators carry no
// conversion factors.

namespace halomd::units {

// Boltzmann constant, kJ·mol⁻¹·K⁻¹
inline constexpr double kB = 0.008314462618;

// Coulomb prefactor f = 1/(4πε₀), kJ·mol⁻¹·nm·e⁻²
inline constexpr double coulomb_prefactor = 138.935458;

// kJ·mol⁻¹·nm⁻³ -> bar
inline constexpr double pressure_factor = 16.6054;

} // namespace halomd::units
