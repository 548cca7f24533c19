#include "readout/atomic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "readout/angular.hpp"

namespace readout {

namespace {
constexpr double kJGround = 0.5;   // 5S1/2
constexpr double kJExcited = 1.5;  // 5P3/2
constexpr double kNuclearSpin = 1.5;

double hyperfine_w(double f_ground, double f_excited) {
  const double sixj = angular::wigner_6j(kJGround, kJExcited, 1.0,
                                         f_excited, f_ground, kNuclearSpin);
  return sixj * sixj;
}
}  // namespace

std::array<double, 3> d2_line_strengths() {
  std::array<double, 3> s{};
  double total = 0.0;
  for (int fp = 1; fp <= 3; ++fp) {
    s[fp - 1] = (2.0 * fp + 1.0) * (2.0 * kJGround + 1.0) * hyperfine_w(2.0, fp);
    total += s[fp - 1];
  }
  // The 6j sum rule makes this 1 already; normalize away rounding.
  for (auto& v : s) v /= total;
  return s;
}

std::array<double, 3> d2_branch_to_dark() {
  std::array<double, 3> b{};
  for (int fp = 1; fp <= 3; ++fp) {
    const double to_dark = 3.0 * hyperfine_w(1.0, fp);    // (2F+1) weight, F=1
    const double to_bright = 5.0 * hyperfine_w(2.0, fp);  // F=2
    const double total = to_dark + to_bright;
    b[fp - 1] = (to_dark == 0.0) ? 0.0 : to_dark / total;
  }
  return b;
}

LevelScheme LevelScheme::rb87_d2(double gamma, double hfp, double delta21,
                                 double ground_splitting) {
  LevelScheme scheme;
  scheme.gamma = gamma;
  scheme.ground_splitting = ground_splitting;
  scheme.excited_offset = {hfp + delta21, hfp, 0.0};
  scheme.line_strength = d2_line_strengths();
  scheme.branch_to_dark = d2_branch_to_dark();
  return scheme;
}

std::vector<std::string> LevelScheme::invariant_violations() const {
  std::vector<std::string> out;
  if (gamma <= 0.0) out.push_back("atomic.gamma must be > 0");
  if (ground_splitting <= 0.0) out.push_back("atomic.ground_splitting must be > 0");
  double sum = 0.0;
  for (double s : line_strength) sum += s;
  if (std::abs(sum - 1.0) > 1e-12) out.push_back("atomic.line_strengths must sum to 1");
  for (int fp = 1; fp <= 3; ++fp) {
    const double b = branching(fp);
    if (b < 0.0 || b > 1.0)
      out.push_back("atomic.branching(F'=" + std::to_string(fp) + ") must be in [0,1]");
  }
  if (branching(3) != 0.0) out.push_back("atomic.branching(F'=3) must be exactly 0");
  if (!(offset(3) < offset(2) && offset(2) < offset(1)))
    out.push_back("atomic.excited_offsets must increase strictly with decreasing F'");
  return out;
}

double free_excitation_probability(double s, double delta_a, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("free_excitation_probability: gamma must be > 0");
  if (s < 0.0) throw std::invalid_argument("free_excitation_probability: s must be >= 0");
  const double d = delta_a / gamma;
  return 0.5 * s / (1.0 + s + d * d);
}

std::vector<LeakChannel> leak_channels(double delta_a, const LevelScheme& scheme, double s) {
  if (s < 0.0) throw std::invalid_argument("leak_channels: s must be >= 0");
  const double w = scheme.gamma * scheme.gamma * (1.0 + s);  // saturated half-width squared
  const double probe_lorentz = delta_a * delta_a + w;
  std::vector<LeakChannel> channels;
  channels.reserve(2);
  for (int fp = 2; fp >= 1; --fp) {
    const double delta_eff = scheme.offset(fp) - delta_a;
    const double rate = scheme.strength(fp) / scheme.strength(3) *
                        probe_lorentz / (delta_eff * delta_eff + w);
    channels.push_back({fp, rate, scheme.branching(fp)});
  }
  return channels;
}

}  // namespace readout
