#pragma once

#include <numbers>

namespace readout {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Rates and detunings are carried internally as angular frequencies (rad/s).
// Config files quote everything as frequency/2pi, so conversion happens once.
constexpr double mhz_to_angular(double f_mhz) { return two_pi * f_mhz * 1e6; }
constexpr double ghz_to_angular(double f_ghz) { return two_pi * f_ghz * 1e9; }
constexpr double angular_to_mhz(double w) { return w / (two_pi * 1e6); }

constexpr double us_to_s(double t_us) { return t_us * 1e-6; }

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double boltzmann = 1.380649e-23;     // J/K
inline constexpr double amu = 1.66053906892e-27;      // kg
inline constexpr double rb87_mass = 86.909180531 * amu;
inline constexpr double rb_d2_wavelength = 780.241209e-9;  // m
}  // namespace constants

// Single-photon recoil energy divided by k_B, in kelvin.
double recoil_temperature(double wavelength_m, double mass_kg);

}  // namespace readout
