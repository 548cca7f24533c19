#pragma once

#include <span>
#include <vector>

#include "readout/discrimination.hpp"
#include "readout/model.hpp"

namespace readout {

struct ScanPoint {
  double x = 0.0;  // grid value: mean scattered photons, or detuning (rad/s)
  FidelityReport report;
  double saturation = 0.0;
  double detected_mean = 0.0;  // bright-state detected mean, leak ignored
  double leak_exposure = 0.0;  // leak_rate * probe duration
};

// Achievable fidelity as a function of the mean number of scattered photons
// at fixed saturation.  The probe duration implied by each grid point sets
// the accumulated background; the optimal threshold is chosen per point.
std::vector<ScanPoint> fidelity_vs_scattered(const FluorescenceModel& model,
                                             std::span<const double> n_scattered_grid,
                                             double delta_a = 0.0);

// Fidelity vs probe-atom detuning with the probe power rescaled at every
// point so the bright-state detected mean stays at target_mean.  Grid values
// are angular detunings in [0, omega_HFP).
std::vector<ScanPoint> detuning_scan_fluorescence(const FluorescenceModel& model,
                                                  std::span<const double> delta_a_grid,
                                                  double target_mean);

struct TransmissionModel {
  CavitySystem cavity{};
  double target_dark_mean = 80.0;  // detected photons for the uncoupled atom
  double prep_error = 1e-3;
  double probe_duration = 300e-6;
};

// Transmission pmfs at a given detuning: the F=1 atom leaves the cavity
// empty (Poisson, target mean), the F=2 atom suppresses transmission to
// T(delta_a).  Preparation errors are folded in.
StatePmfs transmission_pmfs(const TransmissionModel& model, double delta_a);

std::vector<ScanPoint> detuning_scan_transmission(const TransmissionModel& model,
                                                  std::span<const double> delta_a_grid);

}  // namespace readout
