#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace readout {

// Per-interval counting model.  scatter_rate is the total photon scattering
// rate of the bright atom (all emission channels); eta is the detection
// probability per scattered photon, so detected fluorescence photons arrive
// at rate scatter_rate * eta until a depumping event stops them.
struct ReadoutConfig {
  double probe_duration = 85e-6;  // s
  double scatter_rate = 0.0;      // s^-1
  double eta = 0.0;               // per scattered photon
  double leak_rate = 0.0;         // depumping events, s^-1
  double background_rate = 50.0;  // dark + stray counts, s^-1
  double prep_error = 1e-3;       // probability the prepared state is wrong
  // Residual detected scattering of the F=1 atom (6.8 GHz off resonance);
  // zero by default, can be switched on through the config.
  double dark_residual_rate = 0.0;

  double detected_rate() const { return scatter_rate * eta; }
  std::vector<std::string> invariant_violations() const;
};

// Probability mass function over detected photon number N = 0..n_max().
// The truncation point is grown until the dropped tail is negligible.
class CountDistribution {
 public:
  CountDistribution() : pmf_(1, 1.0) {}
  explicit CountDistribution(std::vector<double> pmf);

  static CountDistribution poisson(double mean, double tail_bound = 1e-12);
  static CountDistribution delta(std::size_t n);
  // (1 - weight_b) * a + weight_b * b
  static CountDistribution mixture(const CountDistribution& a, const CountDistribution& b,
                                   double weight_b);

  std::size_t n_max() const { return pmf_.size() - 1; }
  double p(std::size_t n) const { return n < pmf_.size() ? pmf_[n] : 0.0; }
  const std::vector<double>& pmf() const { return pmf_; }

  double total() const;
  double mean() const;
  double variance() const;

  CountDistribution convolve(const CountDistribution& other) const;

 private:
  std::vector<double> pmf_;
};

// F=1 atom: only background counts (residual probe scattering of the dark
// state is 6.8 GHz off resonance and neglected by default).
CountDistribution dark_state_distribution(const ReadoutConfig& cfg);

// F=2 atom: Poisson fluorescence at rate scatter_rate*eta until the probe
// ends or a leak event (exponential clock) stops it, convolved with the
// Poisson background.  Closed form, absolute error < 1e-9 per bin.
CountDistribution bright_state_distribution(const ReadoutConfig& cfg);

// Mixture of bright_state_distribution over a truncated-Gaussian spread of
// the scattering rate (std dev sigma_rel * scatter_rate, truncated at 0),
// via Gauss-Hermite quadrature.
CountDistribution broadened_distribution(const ReadoutConfig& cfg, double sigma_rel,
                                         int n_nodes = 21);

// Q = variance/mean - 1.  Throws for zero mean.
double mandel_q(const CountDistribution& dist);

// Solves for the sigma_rel that gives broadened_distribution the target
// Mandel Q.  Throws readout::ConvergenceError when the target cannot be
// bracketed (e.g. no bright signal to broaden).
double calibrate_broadening(double target_q, const ReadoutConfig& cfg, int n_nodes = 21,
                            double tolerance = 1e-6);

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gauss-Hermite nodes/weights for integrals against exp(-x^2).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

}  // namespace readout
