#include "readout/cavity.hpp"

#include <cmath>
#include <stdexcept>

namespace readout {

std::vector<std::string> CavitySystem::invariant_violations() const {
  std::vector<std::string> out;
  if (g < 0.0) out.push_back("cavity.g must be >= 0");
  if (kappa <= 0.0) out.push_back("cavity.kappa must be > 0");
  if (gamma <= 0.0) out.push_back("cavity.gamma must be > 0");
  return out;
}

std::complex<double> cooperativity(const CavitySystem& sys) {
  const std::complex<double> atom(sys.delta_a, -sys.gamma);
  const std::complex<double> cav(sys.delta_c, -sys.kappa);
  return sys.g * sys.g / (atom * cav);
}

double intracavity_excitation(double p_free, std::complex<double> nu) {
  if (p_free < 0.0 || p_free > 0.5)
    throw std::invalid_argument("intracavity_excitation: p_free must be in [0, 0.5]");
  return p_free / std::norm(1.0 - nu);
}

double scattering_rate(const CavitySystem& sys, double p_e) {
  if (p_e < 0.0 || p_e > 1.0)
    throw std::invalid_argument("scattering_rate: p_e must be in [0, 1]");
  return 2.0 * sys.kappa * sys.g * sys.g /
         (sys.delta_c * sys.delta_c + sys.kappa * sys.kappa) * p_e;
}

double transmission(const CavitySystem& sys) {
  return 1.0 / std::norm(1.0 - cooperativity(sys));
}

double purcell_factor(double g, double kappa, double gamma) {
  if (kappa <= 0.0 || gamma <= 0.0)
    throw std::invalid_argument("purcell_factor: kappa and gamma must be > 0");
  return g * g / (kappa * gamma);
}

double purcell_fraction(double g, double kappa, double gamma) {
  const double fp = purcell_factor(g, kappa, gamma);
  return fp / (1.0 + fp);
}

double cavity_branch_to_dark(double branch_free, double purcell) {
  if (branch_free <= 0.0) return 0.0;
  const double bright = (1.0 - branch_free) * (1.0 + purcell);
  return branch_free / (branch_free + bright);
}

std::vector<std::string> DetectionChain::invariant_violations() const {
  std::vector<std::string> out;
  auto check_prob = [&out](double v, const char* key) {
    if (v < 0.0 || v > 1.0) out.push_back(std::string(key) + " must be in [0,1]");
  };
  check_prob(cavity_fraction, "detection.cavity_fraction");
  check_prob(mirror_fraction, "detection.mirror_fraction");
  check_prob(path_detector_efficiency, "detection.path_detector_efficiency");
  if (dark_rate < 0.0) out.push_back("detection.dark_rate must be >= 0");
  if (stray_rate < 0.0) out.push_back("detection.stray_rate must be >= 0");
  const double eta = cavity_fraction * mirror_fraction * path_detector_efficiency;
  if (eta < 0.0 || eta > 1.0)
    out.push_back("detection: total efficiency eta must be in [0,1]");
  return out;
}

double detection_budget(const DetectionChain& chain) {
  return chain.cavity_fraction * chain.mirror_fraction * chain.path_detector_efficiency;
}

std::pair<double, double> coupling_vs_length(double l, double l0, double g0, double kappa0) {
  if (l <= 0.0 || l0 <= 0.0) throw std::invalid_argument("coupling_vs_length: lengths must be > 0");
  const double ratio = l / l0;
  return {g0 * std::pow(ratio, -0.75), kappa0 / ratio};
}

double transmission_standing_wave_average(const CavitySystem& sys, int n_steps) {
  if (n_steps < 2) throw std::invalid_argument("transmission_standing_wave_average: n_steps");
  const double g_peak = 0.5 * std::numbers::pi * sys.g;
  // Simpson rule over theta in [0, pi/2]; n_steps made even.
  const int n = n_steps + (n_steps % 2);
  const double h = 0.5 * std::numbers::pi / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    CavitySystem local = sys;
    local.g = g_peak * std::cos(i * h);
    const double f = transmission(local);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0 / (0.5 * std::numbers::pi);
}

}  // namespace readout
