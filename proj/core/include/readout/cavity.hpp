#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "readout/units.hpp"

namespace readout {

// Atom-cavity parameters; all angular (rad/s).  delta_a and delta_c are the
// probe detunings from the atomic and cavity resonances.
struct CavitySystem {
  double g = mhz_to_angular(3.0);
  double kappa = mhz_to_angular(2.8);
  double gamma = mhz_to_angular(3.0);
  double delta_a = 0.0;
  double delta_c = 0.0;

  std::vector<std::string> invariant_violations() const;
};

// nu = g^2 / [(delta_a - i gamma)(delta_c - i kappa)]
std::complex<double> cooperativity(const CavitySystem& sys);

// Excitation of the intracavity atom: p_free / |1 - nu|^2.
double intracavity_excitation(double p_free, std::complex<double> nu);

// Photon rate into the cavity output field: 2 kappa g^2 / (delta_c^2 + kappa^2) * p_e.
double scattering_rate(const CavitySystem& sys, double p_e);

// Resonant probe transmission T = 1 / |1 - nu|^2.
double transmission(const CavitySystem& sys);

// Emission into the cavity mode competes at 2g^2/kappa against free-space
// decay at 2 gamma.
double purcell_factor(double g, double kappa, double gamma);    // (2g^2/kappa) / (2 gamma)
double purcell_fraction(double g, double kappa, double gamma);  // beta = F_P / (1 + F_P)

// Branching to the dark state when the decay channel back to the bright
// ground state is additionally Purcell-enhanced.  The elastically scattered
// component lands at the cavity frequency, so only the bright channel gains
// the factor (1 + F_P).
double cavity_branch_to_dark(double branch_free, double purcell);

// Photon-collection budget behind the cavity output mirror.
struct DetectionChain {
  double cavity_fraction = 15.0 / 29.0;  // beta at g/2pi=3, kappa/2pi=2.8, gamma/2pi=3
  double mirror_fraction = 0.90;
  double path_detector_efficiency = 0.40;
  double dark_rate = 25.0;   // s^-1
  double stray_rate = 25.0;  // s^-1

  double background_rate() const { return dark_rate + stray_rate; }
  std::vector<std::string> invariant_violations() const;
};

// Total detection probability per scattered photon.
double detection_budget(const DetectionChain& chain);

// (g, kappa) scaled from a reference cavity of length l0 in the near-planar
// limit: g ~ l^(-3/4), kappa ~ l^(-1), so 2g^2/kappa ~ l^(-1/2).
std::pair<double, double> coupling_vs_length(double l, double l0, double g0, double kappa0);

// Transmission averaged over a standing-wave coupling profile
// g(theta) = g_peak |cos theta| with uniform phase, g_peak = (pi/2) g_av so
// the mean coupling equals sys.g.  Models shot-to-shot spread of the atom's
// position along the cavity axis.
double transmission_standing_wave_average(const CavitySystem& sys, int n_steps = 512);

}  // namespace readout
