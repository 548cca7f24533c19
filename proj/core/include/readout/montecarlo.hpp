#pragma once

#include <cstdint>
#include <vector>

#include "readout/counting.hpp"

namespace readout {

// Counter-based per-shot random stream: the state is a hash of (seed, shot),
// so results depend only on that pair and never on scheduling or sharding.
class ShotRng {
 public:
  ShotRng(std::uint64_t seed, std::uint64_t shot);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double exponential(double rate);
  double normal();
  std::uint32_t poisson(double mean);
  std::uint32_t binomial(std::uint32_t n, double p);
  // Number of the first success, trials counted from 1; returns UINT32_MAX
  // when p == 0.
  std::uint32_t geometric(double p);

 private:
  std::uint64_t state_;
};

struct CountHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t n_shots = 0;
  std::uint64_t seed = 0;

  void add(std::uint32_t n);
  void merge(const CountHistogram& other);
  double mean() const;
  double variance() const;
};

double mandel_q(const CountHistogram& hist);

enum class TrueState { Bright, Dark };

enum class LeakSampling {
  ExponentialClock,     // leak time ~ Exp(leak_rate), matches the analytic pmf
  PerScatterBernoulli,  // each scattered photon depumps with p = leak_rate/scatter_rate
};

struct SimOptions {
  double sigma_rel = 0.0;  // shot-to-shot relative spread of the scattering rate
  LeakSampling leak_sampling = LeakSampling::ExponentialClock;
  unsigned workers = 1;
};

// One probe interval; deterministic given (seed, shot).
std::uint32_t simulate_shot(const ReadoutConfig& cfg, TrueState state, std::uint64_t seed,
                            std::uint64_t shot, const SimOptions& opts = {});

CountHistogram simulate_histogram(const ReadoutConfig& cfg, TrueState state,
                                  std::uint64_t n_shots, std::uint64_t seed,
                                  const SimOptions& opts = {});

// Transmission readout: detected photon number is Poisson with a mean set by
// the atomic state; prep_error swaps the state before sampling.
std::uint32_t simulate_transmission_shot(double mean_bright, double mean_dark,
                                         double prep_error, TrueState state,
                                         std::uint64_t seed, std::uint64_t shot);
CountHistogram simulate_transmission_histogram(double mean_bright, double mean_dark,
                                               double prep_error, TrueState state,
                                               std::uint64_t n_shots, std::uint64_t seed,
                                               unsigned workers = 1);

// (1/2) sum_n |p_model(n) - p_empirical(n)|
double total_variation(const CountDistribution& model, const CountHistogram& hist);

}  // namespace readout
