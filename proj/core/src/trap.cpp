#include "readout/trap.hpp"

#include <cmath>
#include <stdexcept>

#include "readout/units.hpp"

namespace readout {

double recoil_temperature(double wavelength_m, double mass_kg) {
  if (wavelength_m <= 0.0 || mass_kg <= 0.0)
    throw std::invalid_argument("recoil_temperature: arguments must be > 0");
  const double k = two_pi / wavelength_m;
  const double p = constants::hbar * k;
  return p * p / (2.0 * mass_kg) / constants::boltzmann;
}

std::vector<std::string> TrapModel::invariant_violations() const {
  std::vector<std::string> out;
  if (depth <= 0.0) out.push_back("trap.depth must be > 0");
  if (recoil_energy <= 0.0) out.push_back("trap.recoil_energy must be > 0");
  return out;
}

long pushout_photon_budget(const TrapModel& trap) {
  if (trap.depth <= 0.0 || trap.recoil_energy <= 0.0)
    throw std::invalid_argument("pushout_photon_budget: invalid trap");
  const double ratio = trap.depth / trap.recoil_energy;
  const double n = (trap.geometry == ProbeGeometry::Unidirectional)
                       ? std::sqrt(ratio)
                       : 0.5 * ratio;
  return static_cast<long>(std::ceil(n));
}

double survival_probability(double n_scattered, const TrapModel& trap) {
  if (n_scattered < 0.0)
    throw std::invalid_argument("survival_probability: n_scattered must be >= 0");
  const double budget = static_cast<double>(pushout_photon_budget(trap));
  if (trap.survival == SurvivalModel::HardThreshold) {
    return n_scattered < budget ? 1.0 : 0.0;
  }
  return std::exp(-n_scattered / budget);
}

}  // namespace readout
