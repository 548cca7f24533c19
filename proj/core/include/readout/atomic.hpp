#pragma once

#include <array>
#include <string>
#include <vector>

#include "readout/units.hpp"

namespace readout {

// Hyperfine level data for the probed D2 transition, F=2 ground manifold.
// Excited-state offsets are measured downward from F'=3 (the probe reference),
// so offset(3) = 0 and offsets grow with decreasing F'.
struct LevelScheme {
  double ground_splitting = ghz_to_angular(6.834682611);  // F=2 <-> F=1 (rad/s)
  double gamma = mhz_to_angular(3.0);                     // polarization decay rate (rad/s)
  std::array<double, 3> excited_offset{};   // index F'-1 -> offset below F'=3 (rad/s)
  std::array<double, 3> line_strength{};    // index F'-1 -> S_{2F'}, sums to 1 over F'
  std::array<double, 3> branch_to_dark{};   // index F'-1 -> P(F' decays to F=1)

  double offset(int f_excited) const { return excited_offset[f_excited - 1]; }
  double strength(int f_excited) const { return line_strength[f_excited - 1]; }
  double branching(int f_excited) const { return branch_to_dark[f_excited - 1]; }

  // Rb-87 D2 tables from angular-momentum algebra (J=1/2 -> J'=3/2, I=3/2),
  // polarization-averaged.  hfp = F'=3 - F'=2 splitting, delta21 = F'=2 - F'=1.
  static LevelScheme rb87_d2(double gamma = mhz_to_angular(3.0),
                             double hfp = mhz_to_angular(267.0),
                             double delta21 = mhz_to_angular(157.0),
                             double ground_splitting = ghz_to_angular(6.834682611));

  // Returns human-readable invariant violations, empty when valid.
  std::vector<std::string> invariant_violations() const;
};

// Relative hyperfine line strengths S_{2F'} for F=2 -> F' in {1,2,3},
// S_{2F'} = (2F'+1)(2J+1) {J J' 1; F' F I}^2, normalized to sum 1.
std::array<double, 3> d2_line_strengths();

// Probability that spontaneous decay from F' ends in the dark F=1 state.
// F'=3 cannot reach F=1 (dipole selection rule), so the entry is exactly 0.
std::array<double, 3> d2_branch_to_dark();

// Steady-state two-level excitation, P = (s/2) / (1 + s + (delta/gamma)^2).
// Throws std::invalid_argument for gamma <= 0 or s < 0.
double free_excitation_probability(double s, double delta_a, double gamma);

struct LeakChannel {
  int f_excited;          // 1 or 2
  double relative_rate;   // excitation rate relative to the F'=3 channel
  double branch_to_dark;  // decay probability into F=1 per excitation
};

// Off-resonant excitation channels that can pump the atom dark.  delta_a is
// the red detuning of the probe from F'=3; the effective detuning of channel
// F' is offset(F') - delta_a.  Both Lorentzians carry the saturated width
// gamma^2 (1+s) of the driving field.
std::vector<LeakChannel> leak_channels(double delta_a, const LevelScheme& scheme, double s);

}  // namespace readout
