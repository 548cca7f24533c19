#pragma once

#include <string>
#include <vector>

namespace readout {

enum class ProbeGeometry { Unidirectional, Balanced };
enum class SurvivalModel { HardThreshold, Exponential };

// Dipole trap parameters; energies are carried as temperatures (U/k_B).
struct TrapModel {
  double depth = 2e-3;          // K
  double recoil_energy = 181e-9;  // K
  ProbeGeometry geometry = ProbeGeometry::Unidirectional;
  SurvivalModel survival = SurvivalModel::HardThreshold;

  std::vector<std::string> invariant_violations() const;
};

// Scattered photons the atom can absorb before radiation pressure ejects it.
// Unidirectional light kicks coherently: n directed recoils reach the trap
// depth when n^2 E_rec = U0.  Balanced beams heat diffusively at ~2 E_rec per
// absorption-emission cycle.
long pushout_photon_budget(const TrapModel& trap);

// 1 below the budget and 0 at or above it (hard threshold), or
// exp(-n/budget) for the diffusive variant.
double survival_probability(double n_scattered, const TrapModel& trap);

}  // namespace readout
