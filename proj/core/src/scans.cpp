#include "readout/scans.hpp"

#include <stdexcept>

namespace readout {

std::vector<ScanPoint> fidelity_vs_scattered(const FluorescenceModel& model,
                                             std::span<const double> n_scattered_grid,
                                             double delta_a) {
  const BrightChannel ch = model.channel_at(delta_a, model.saturation);
  if (ch.total_scatter_rate <= 0.0)
    throw std::invalid_argument("fidelity_vs_scattered: no bright scattering");
  const double eta = model.eta();

  std::vector<ScanPoint> curve;
  curve.reserve(n_scattered_grid.size());
  for (double n_s : n_scattered_grid) {
    if (n_s <= 0.0) throw std::invalid_argument("fidelity_vs_scattered: grid must be > 0");
    ReadoutConfig cfg;
    cfg.probe_duration = n_s / ch.total_scatter_rate;
    cfg.scatter_rate = ch.total_scatter_rate;
    cfg.eta = eta;
    cfg.leak_rate = ch.leak_rate;
    cfg.background_rate = model.background_rate;
    cfg.prep_error = model.prep_error;

    const auto pmfs = prepared_pmfs(bright_state_distribution(cfg),
                                    dark_state_distribution(cfg), cfg.prep_error);
    ScanPoint pt;
    pt.x = n_s;
    pt.report = optimal_threshold(pmfs.bright, pmfs.dark, BrightRule::CountAtOrAbove);
    pt.saturation = model.saturation;
    pt.detected_mean = eta * n_s;
    pt.leak_exposure = ch.per_scatter_leak * n_s;
    curve.push_back(pt);
  }
  return curve;
}

std::vector<ScanPoint> detuning_scan_fluorescence(const FluorescenceModel& model,
                                                  std::span<const double> delta_a_grid,
                                                  double target_mean) {
  if (target_mean <= 0.0)
    throw std::invalid_argument("detuning_scan_fluorescence: target mean must be > 0");
  const double hfp = model.scheme.offset(2);

  std::vector<ScanPoint> curve;
  curve.reserve(delta_a_grid.size());
  for (double delta_a : delta_a_grid) {
    if (delta_a < 0.0 || delta_a >= hfp)
      throw std::invalid_argument(
          "detuning_scan_fluorescence: detuning must lie in [0, omega_HFP)");
    const double s = model.solve_saturation(delta_a, target_mean);
    const ReadoutConfig cfg = model.readout_config(delta_a, s);
    const auto pmfs = prepared_pmfs(bright_state_distribution(cfg),
                                    dark_state_distribution(cfg), cfg.prep_error);
    ScanPoint pt;
    pt.x = delta_a;
    pt.report = optimal_threshold(pmfs.bright, pmfs.dark, BrightRule::CountAtOrAbove);
    pt.saturation = s;
    pt.detected_mean = cfg.detected_rate() * cfg.probe_duration;
    pt.leak_exposure = cfg.leak_rate * cfg.probe_duration;
    curve.push_back(pt);
  }
  return curve;
}

StatePmfs transmission_pmfs(const TransmissionModel& model, double delta_a) {
  if (model.target_dark_mean <= 0.0)
    throw std::invalid_argument("transmission_pmfs: target dark mean must be > 0");
  CavitySystem sys = model.cavity;
  sys.delta_a = delta_a;
  const double t = transmission(sys);
  const auto dark = CountDistribution::poisson(model.target_dark_mean);
  const auto bright = CountDistribution::poisson(model.target_dark_mean * t);
  return prepared_pmfs(bright, dark, model.prep_error);
}

std::vector<ScanPoint> detuning_scan_transmission(const TransmissionModel& model,
                                                  std::span<const double> delta_a_grid) {
  std::vector<ScanPoint> curve;
  curve.reserve(delta_a_grid.size());
  for (double delta_a : delta_a_grid) {
    const auto pmfs = transmission_pmfs(model, delta_a);
    ScanPoint pt;
    pt.x = delta_a;
    pt.report = optimal_threshold(pmfs.bright, pmfs.dark, BrightRule::CountBelow);
    pt.detected_mean = pmfs.bright.mean();
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace readout
