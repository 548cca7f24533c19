#include "readout/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace readout {

namespace {

double log_poisson(double mean, std::size_t n) {
  if (mean <= 0.0) return n == 0 ? 0.0 : -INFINITY;
  return -mean + static_cast<double>(n) * std::log(mean) - std::lgamma(n + 1.0);
}

std::size_t suggested_n_max(double mean) {
  const double m = std::max(mean, 1.0);
  return static_cast<std::size_t>(std::ceil(m + 12.0 * std::sqrt(m) + 25.0));
}

// Fluorescence-only pmf for detected mean mu = lambda*t and leak exposure
// kap = leak_rate*t:
//   P(n) = e^{-x} mu^n/n! + (kap/x)(mu/x)^n P[Pois(x) > n],  x = mu + kap.
std::vector<double> leak_truncated_pmf(double mu, double kap, std::size_t n_max) {
  std::vector<double> pmf(n_max + 1, 0.0);
  if (mu <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (kap <= 0.0) {
    for (std::size_t n = 0; n <= n_max; ++n) pmf[n] = std::exp(log_poisson(mu, n));
    return pmf;
  }
  const double x = mu + kap;
  const double log_mu_over_x = std::log(mu) - std::log(x);
  double cdf = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    cdf += std::exp(log_poisson(x, n));
    const double tail = std::max(0.0, 1.0 - cdf);
    const double no_leak = std::exp(-x + static_cast<double>(n) * std::log(mu) -
                                    std::lgamma(n + 1.0));
    const double leaked = kap / x * std::exp(static_cast<double>(n) * log_mu_over_x) * tail;
    pmf[n] = no_leak + leaked;
  }
  return pmf;
}

}  // namespace

std::vector<std::string> ReadoutConfig::invariant_violations() const {
  std::vector<std::string> out;
  if (probe_duration <= 0.0) out.push_back("readout.probe_duration must be > 0");
  if (scatter_rate < 0.0) out.push_back("readout.scatter_rate must be >= 0");
  if (eta < 0.0 || eta > 1.0) out.push_back("readout.eta must be in [0,1]");
  if (leak_rate < 0.0) out.push_back("readout.leak_rate must be >= 0");
  if (background_rate < 0.0) out.push_back("readout.background_rate must be >= 0");
  if (prep_error < 0.0 || prep_error > 1.0) out.push_back("readout.prep_error must be in [0,1]");
  if (dark_residual_rate < 0.0) out.push_back("readout.dark_residual_rate must be >= 0");
  return out;
}

CountDistribution::CountDistribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {
  if (pmf_.empty()) pmf_.assign(1, 1.0);
  for (auto& p : pmf_) p = std::max(p, 0.0);
  const double sum = total();
  if (sum > 1.0) {
    for (auto& p : pmf_) p /= sum;
  }
}

CountDistribution CountDistribution::poisson(double mean, double tail_bound) {
  if (mean <= 0.0) return delta(0);
  std::size_t n_max = suggested_n_max(mean);
  for (;;) {
    std::vector<double> pmf(n_max + 1);
    double sum = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
      pmf[n] = std::exp(log_poisson(mean, n));
      sum += pmf[n];
    }
    if (1.0 - sum < tail_bound) return CountDistribution(std::move(pmf));
    n_max = n_max * 2 + 16;
  }
}

CountDistribution CountDistribution::delta(std::size_t n) {
  std::vector<double> pmf(n + 1, 0.0);
  pmf[n] = 1.0;
  return CountDistribution(std::move(pmf));
}

CountDistribution CountDistribution::mixture(const CountDistribution& a,
                                             const CountDistribution& b, double weight_b) {
  if (weight_b < 0.0 || weight_b > 1.0)
    throw std::invalid_argument("CountDistribution::mixture: weight must be in [0,1]");
  std::vector<double> pmf(std::max(a.pmf_.size(), b.pmf_.size()), 0.0);
  for (std::size_t n = 0; n < pmf.size(); ++n)
    pmf[n] = (1.0 - weight_b) * a.p(n) + weight_b * b.p(n);
  return CountDistribution(std::move(pmf));
}

double CountDistribution::total() const {
  double s = 0.0;
  for (double p : pmf_) s += p;
  return s;
}

double CountDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < pmf_.size(); ++n) m += static_cast<double>(n) * pmf_[n];
  return m;
}

double CountDistribution::variance() const {
  const double m = mean();
  double m2 = 0.0;
  for (std::size_t n = 0; n < pmf_.size(); ++n)
    m2 += static_cast<double>(n) * static_cast<double>(n) * pmf_[n];
  return m2 - m * m;
}

CountDistribution CountDistribution::convolve(const CountDistribution& other) const {
  std::vector<double> out(pmf_.size() + other.pmf_.size() - 1, 0.0);
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    if (pmf_[i] == 0.0) continue;
    for (std::size_t j = 0; j < other.pmf_.size(); ++j)
      out[i + j] += pmf_[i] * other.pmf_[j];
  }
  return CountDistribution(std::move(out));
}

CountDistribution dark_state_distribution(const ReadoutConfig& cfg) {
  return CountDistribution::poisson((cfg.background_rate + cfg.dark_residual_rate) *
                                    cfg.probe_duration);
}

CountDistribution bright_state_distribution(const ReadoutConfig& cfg) {
  const double mu = cfg.detected_rate() * cfg.probe_duration;
  const double kap = cfg.leak_rate * cfg.probe_duration;
  const double bg = cfg.background_rate * cfg.probe_duration;

  std::size_t n_max = suggested_n_max(mu + bg);
  for (;;) {
    auto fluor = CountDistribution(leak_truncated_pmf(mu, kap, n_max));
    auto full = (bg > 0.0) ? fluor.convolve(CountDistribution::poisson(bg, 1e-15)) : fluor;
    if (1.0 - full.total() < 1e-12) return full;
    n_max = n_max * 2 + 16;
  }
}

CountDistribution broadened_distribution(const ReadoutConfig& cfg, double sigma_rel,
                                         int n_nodes) {
  if (sigma_rel < 0.0)
    throw std::invalid_argument("broadened_distribution: sigma_rel must be >= 0");
  if (sigma_rel == 0.0) return bright_state_distribution(cfg);
  if (n_nodes < 2) throw std::invalid_argument("broadened_distribution: n_nodes must be >= 2");

  const auto gh = gauss_hermite(n_nodes);
  // R_i = R (1 + sqrt(2) sigma_rel x_i), nodes with R_i <= 0 dropped.
  std::vector<double> scale, weight;
  double wsum = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    const double s = 1.0 + std::numbers::sqrt2 * sigma_rel * gh.nodes[i];
    if (s <= 0.0) continue;
    scale.push_back(s);
    weight.push_back(gh.weights[i]);
    wsum += gh.weights[i];
  }
  std::vector<double> pmf;
  for (std::size_t i = 0; i < scale.size(); ++i) {
    ReadoutConfig node_cfg = cfg;
    node_cfg.scatter_rate = cfg.scatter_rate * scale[i];
    const auto node = bright_state_distribution(node_cfg);
    if (node.pmf().size() > pmf.size()) pmf.resize(node.pmf().size(), 0.0);
    const double w = weight[i] / wsum;
    for (std::size_t n = 0; n < node.pmf().size(); ++n) pmf[n] += w * node.p(n);
  }
  return CountDistribution(std::move(pmf));
}

double mandel_q(const CountDistribution& dist) {
  const double m = dist.mean();
  if (m <= 0.0) throw std::invalid_argument("mandel_q: distribution mean must be > 0");
  return dist.variance() / m - 1.0;
}

double calibrate_broadening(double target_q, const ReadoutConfig& cfg, int n_nodes,
                            double tolerance) {
  if (target_q < 0.0) throw std::invalid_argument("calibrate_broadening: target_q must be >= 0");
  auto q_of = [&](double sigma) { return mandel_q(broadened_distribution(cfg, sigma, n_nodes)); };

  const double q0 = q_of(0.0);
  if (std::abs(q0 - target_q) <= tolerance) return 0.0;
  if (q0 > target_q)
    throw ConvergenceError("calibrate_broadening: base distribution already exceeds target Q");

  const double mu = std::max(cfg.detected_rate() * cfg.probe_duration, 1e-12);
  // Q grows roughly as mu sigma^2; expand the bracket from this estimate.
  double hi = std::sqrt(std::max(target_q - q0, tolerance) / mu) * 2.0 + 1e-3;
  int expansions = 0;
  while (q_of(hi) < target_q) {
    hi *= 2.0;
    if (++expansions > 40)
      throw ConvergenceError("calibrate_broadening: target Q not reachable by rate spread");
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double q = q_of(mid);
    if (std::abs(q - target_q) <= tolerance) return mid;
    (q < target_q ? lo : hi) = mid;
  }
  throw ConvergenceError("calibrate_broadening: bisection did not converge");
}

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  GaussHermite out;
  out.nodes.assign(n, 0.0);
  out.weights.assign(n, 0.0);
  const double eps = 1e-14;
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    // Initial guesses for the descending roots (standard asymptotics).
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * out.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * out.nodes[1];
    } else {
      z = 2.0 * z - out.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = std::pow(std::numbers::pi, -0.25);
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps) break;
    }
    out.nodes[i] = z;
    out.nodes[n - 1 - i] = -z;
    out.weights[i] = 2.0 / (pp * pp);
    out.weights[n - 1 - i] = out.weights[i];
  }
  return out;
}

}  // namespace readout
