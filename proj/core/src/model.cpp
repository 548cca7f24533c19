#include "readout/model.hpp"

#include <cmath>
#include <stdexcept>

namespace readout {

double FluorescenceModel::eta() const {
  return eta_override >= 0.0 ? eta_override : detection_budget(chain);
}

double FluorescenceModel::purcell() const {
  return cavity_enhanced ? purcell_factor(cavity.g, cavity.kappa, cavity.gamma) : 0.0;
}

BrightChannel FluorescenceModel::channel_at(double delta_a, double s) const {
  BrightChannel out;
  out.saturation = s;
  out.p_free = free_excitation_probability(s, delta_a, scheme.gamma);

  CavitySystem sys = cavity;
  sys.delta_a = delta_a;
  const double fp = purcell();

  if (cavity_enhanced) {
    out.p_excited = intracavity_excitation(out.p_free, cooperativity(sys));
    out.cavity_output_rate = scattering_rate(sys, out.p_excited);
  } else {
    out.p_excited = out.p_free;
    out.cavity_output_rate = 0.0;
  }
  // Free-space emission at 2 gamma plus the Purcell channel at 2 g^2/kappa.
  out.total_scatter_rate = 2.0 * scheme.gamma * (1.0 + fp) * out.p_excited;

  double leak_per_scatter = 0.0;
  for (const auto& ch : leak_channels(delta_a, scheme, s)) {
    const double branch = cavity_modified_branching && cavity_enhanced
                              ? cavity_branch_to_dark(ch.branch_to_dark, fp)
                              : ch.branch_to_dark;
    leak_per_scatter += ch.relative_rate * branch;
  }
  leak_per_scatter /= (1.0 + fp);
  out.per_scatter_leak = leak_per_scatter;
  out.leak_rate = leak_per_scatter * out.total_scatter_rate;
  return out;
}

double FluorescenceModel::solve_saturation(double delta_a, double target_mean) const {
  if (target_mean <= 0.0)
    throw std::invalid_argument("solve_saturation: target mean must be > 0");
  const double e = eta();
  if (e <= 0.0) throw std::invalid_argument("solve_saturation: eta must be > 0");

  // detected rate = eta * 2 gamma (1+F_P) * p_free / |1-nu|^2, so invert the
  // saturated Lorentzian for p_free.
  double suppression = 1.0;
  if (cavity_enhanced) {
    CavitySystem sys = cavity;
    sys.delta_a = delta_a;
    suppression = std::norm(1.0 - cooperativity(sys));
  }
  const double rate_needed = target_mean / probe_duration;
  const double p_free_needed = rate_needed * suppression /
                               (e * 2.0 * scheme.gamma * (1.0 + purcell()));
  if (p_free_needed >= 0.5)
    throw std::invalid_argument("solve_saturation: target exceeds the saturated limit");
  const double d = delta_a / scheme.gamma;
  return p_free_needed * (1.0 + d * d) / (0.5 - p_free_needed);
}

ReadoutConfig FluorescenceModel::readout_config(double delta_a, double s) const {
  const BrightChannel ch = channel_at(delta_a, s);
  ReadoutConfig cfg;
  cfg.probe_duration = probe_duration;
  cfg.scatter_rate = ch.total_scatter_rate;
  cfg.eta = eta();
  cfg.leak_rate = ch.leak_rate;
  cfg.background_rate = background_rate;
  cfg.prep_error = prep_error;
  return cfg;
}

StatePmfs prepared_pmfs(const CountDistribution& bright_physical,
                        const CountDistribution& dark_physical, double prep_error) {
  StatePmfs out;
  out.bright = CountDistribution::mixture(bright_physical, dark_physical, prep_error);
  out.dark = CountDistribution::mixture(dark_physical, bright_physical, prep_error);
  return out;
}

}  // namespace readout
