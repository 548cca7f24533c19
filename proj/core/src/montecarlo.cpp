#include "readout/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace readout {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

ShotRng::ShotRng(std::uint64_t seed, std::uint64_t shot)
    : state_(mix64(mix64(seed + kGolden) + shot)) {}

std::uint64_t ShotRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double ShotRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double ShotRng::exponential(double rate) {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-uniform()) / rate;
}

double ShotRng::normal() {
  // Box-Muller; the first uniform is kept away from zero.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t ShotRng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::uint32_t n = 0;
  // Knuth's product method is exact; split large means via additivity.
  auto knuth = [this](double m) {
    const double l = std::exp(-m);
    double p = 1.0;
    std::uint32_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > l);
    return k - 1;
  };
  while (mean > 400.0) {
    n += knuth(400.0);
    mean -= 400.0;
  }
  return n + knuth(mean);
}

std::uint32_t ShotRng::binomial(std::uint32_t n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::uint32_t k = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (uniform() < p) ++k;
  return k;
}

std::uint32_t ShotRng::geometric(double p) {
  if (p <= 0.0) return std::numeric_limits<std::uint32_t>::max();
  if (p >= 1.0) return 1;
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double k = std::ceil(std::log(u) / std::log1p(-p));
  if (k >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
    return std::numeric_limits<std::uint32_t>::max();
  }
  return static_cast<std::uint32_t>(std::max(k, 1.0));
}

void CountHistogram::add(std::uint32_t n) {
  if (n >= counts.size()) counts.resize(n + 1, 0);
  ++counts[n];
  ++n_shots;
}

void CountHistogram::merge(const CountHistogram& other) {
  if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
  n_shots += other.n_shots;
}

double CountHistogram::mean() const {
  if (n_shots == 0) return 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < counts.size(); ++n)
    s += static_cast<double>(n) * static_cast<double>(counts[n]);
  return s / static_cast<double>(n_shots);
}

double CountHistogram::variance() const {
  if (n_shots == 0) return 0.0;
  const double m = mean();
  double s2 = 0.0;
  for (std::size_t n = 0; n < counts.size(); ++n)
    s2 += static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(counts[n]);
  return s2 / static_cast<double>(n_shots) - m * m;
}

double mandel_q(const CountHistogram& hist) {
  const double m = hist.mean();
  if (m <= 0.0) throw std::invalid_argument("mandel_q: histogram mean must be > 0");
  return hist.variance() / m - 1.0;
}

std::uint32_t simulate_shot(const ReadoutConfig& cfg, TrueState state, std::uint64_t seed,
                            std::uint64_t shot, const SimOptions& opts) {
  ShotRng rng(seed, shot);

  TrueState actual = state;
  if (cfg.prep_error > 0.0 && rng.uniform() < cfg.prep_error) {
    actual = (state == TrueState::Bright) ? TrueState::Dark : TrueState::Bright;
  }

  const double bg_mean = cfg.background_rate * cfg.probe_duration;
  if (actual == TrueState::Dark) {
    return rng.poisson(bg_mean + cfg.dark_residual_rate * cfg.probe_duration);
  }

  double rate = cfg.scatter_rate;
  if (opts.sigma_rel > 0.0) {
    double scale = 1.0 + opts.sigma_rel * rng.normal();
    while (scale <= 0.0) scale = 1.0 + opts.sigma_rel * rng.normal();
    rate *= scale;
  }

  std::uint32_t fluorescence = 0;
  if (opts.leak_sampling == LeakSampling::ExponentialClock) {
    const double t_leak = rng.exponential(cfg.leak_rate);
    const double t_on = std::min(cfg.probe_duration, t_leak);
    fluorescence = rng.poisson(rate * cfg.eta * t_on);
  } else {
    const double p_leak = (rate > 0.0) ? std::min(cfg.leak_rate / rate, 1.0) : 0.0;
    const std::uint32_t scattered = rng.poisson(rate * cfg.probe_duration);
    const std::uint32_t leak_at = rng.geometric(p_leak);  // always >= 1
    const std::uint32_t kept = std::min(scattered, leak_at - 1);
    fluorescence = rng.binomial(kept, cfg.eta);
  }
  return fluorescence + rng.poisson(bg_mean);
}

namespace {

template <typename ShotFn>
CountHistogram run_sharded(std::uint64_t n_shots, std::uint64_t seed, unsigned workers,
                           ShotFn&& fn) {
  CountHistogram result;
  result.seed = seed;
  if (n_shots == 0) return result;
  const unsigned n_workers = std::max(1u, workers);
  if (n_workers == 1) {
    for (std::uint64_t i = 0; i < n_shots; ++i) result.add(fn(i));
    return result;
  }
  std::vector<CountHistogram> partial(n_workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (n_shots + n_workers - 1) / n_workers;
  for (unsigned w = 0; w < n_workers; ++w) {
    threads.emplace_back([&, w] {
      const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
      const std::uint64_t end = std::min(n_shots, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) partial[w].add(fn(i));
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& h : partial) result.merge(h);
  result.seed = seed;
  return result;
}

}  // namespace

CountHistogram simulate_histogram(const ReadoutConfig& cfg, TrueState state,
                                  std::uint64_t n_shots, std::uint64_t seed,
                                  const SimOptions& opts) {
  return run_sharded(n_shots, seed, opts.workers, [&](std::uint64_t shot) {
    return simulate_shot(cfg, state, seed, shot, opts);
  });
}

std::uint32_t simulate_transmission_shot(double mean_bright, double mean_dark,
                                         double prep_error, TrueState state,
                                         std::uint64_t seed, std::uint64_t shot) {
  ShotRng rng(seed, shot);
  TrueState actual = state;
  if (prep_error > 0.0 && rng.uniform() < prep_error) {
    actual = (state == TrueState::Bright) ? TrueState::Dark : TrueState::Bright;
  }
  return rng.poisson(actual == TrueState::Bright ? mean_bright : mean_dark);
}

CountHistogram simulate_transmission_histogram(double mean_bright, double mean_dark,
                                               double prep_error, TrueState state,
                                               std::uint64_t n_shots, std::uint64_t seed,
                                               unsigned workers) {
  return run_sharded(n_shots, seed, workers, [&](std::uint64_t shot) {
    return simulate_transmission_shot(mean_bright, mean_dark, prep_error, state, seed, shot);
  });
}

double total_variation(const CountDistribution& model, const CountHistogram& hist) {
  if (hist.n_shots == 0) throw std::invalid_argument("total_variation: empty histogram");
  const std::size_t n_max = std::max(model.pmf().size(), hist.counts.size());
  double l1 = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const double emp = (n < hist.counts.size())
                           ? static_cast<double>(hist.counts[n]) /
                                 static_cast<double>(hist.n_shots)
                           : 0.0;
    l1 += std::abs(model.p(n) - emp);
  }
  return 0.5 * l1;
}

}  // namespace readout
