#pragma once

#include "readout/atomic.hpp"
#include "readout/cavity.hpp"
#include "readout/counting.hpp"

namespace readout {

// Steady-state rates of the probed bright atom at a given detuning and
// saturation parameter.
struct BrightChannel {
  double saturation = 0.0;
  double p_free = 0.0;             // free-space excitation
  double p_excited = 0.0;          // after the cavity back-action |1-nu|^2
  double total_scatter_rate = 0.0; // all emission channels, s^-1
  double cavity_output_rate = 0.0; // photons into the cavity output field, s^-1
  double leak_rate = 0.0;          // depumping events into F=1, s^-1
  double per_scatter_leak = 0.0;   // leak probability per scattered photon
};

// Composition of level scheme, cavity and detection chain used by the
// fluorescence scenarios.  With cavity_enhanced = false the same atom is
// read out in free space (high-NA collection), which removes the Purcell
// factor from both the signal and the leak suppression.
struct FluorescenceModel {
  LevelScheme scheme = LevelScheme::rb87_d2();
  CavitySystem cavity{};
  DetectionChain chain{};
  double eta_override = -1.0;  // < 0: use detection_budget(chain)
  bool cavity_enhanced = true;
  // When the atom does reach F'=1,2 the electronically elastic decay path
  // back to F=2 radiates at the cavity frequency and is Purcell-enhanced,
  // reducing the branching into the dark state.
  bool cavity_modified_branching = true;

  double probe_duration = 85e-6;
  double background_rate = 50.0;
  double prep_error = 1e-3;
  double saturation = 0.1;

  double eta() const;
  double purcell() const;  // F_P, zero for the free-space variant
  BrightChannel channel_at(double delta_a, double s) const;
  // Saturation parameter that puts the detected bright mean (leak ignored)
  // at target counts per probe interval.  Throws when the target exceeds
  // the saturated limit.
  double solve_saturation(double delta_a, double target_mean) const;
  ReadoutConfig readout_config(double delta_a, double s) const;
};

// Labeled pmf pair with the preparation error folded in.
struct StatePmfs {
  CountDistribution bright;
  CountDistribution dark;
};

StatePmfs prepared_pmfs(const CountDistribution& bright_physical,
                        const CountDistribution& dark_physical, double prep_error);

}  // namespace readout
