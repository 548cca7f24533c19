#include "readout/discrimination.hpp"

#include <algorithm>
#include <stdexcept>

namespace readout {

namespace {

// P(N >= n_th) computed from the tail so a threshold of 0 gives exactly 1.
double tail_sum(const CountDistribution& d, int n_th) {
  if (n_th <= 0) return 1.0;
  double s = 0.0;
  for (std::size_t n = d.n_max() + 1; n-- > static_cast<std::size_t>(n_th);) s += d.p(n);
  return s;
}

}  // namespace

FidelityReport fidelity_at_threshold(const CountDistribution& bright,
                                     const CountDistribution& dark, int n_th,
                                     BrightRule rule) {
  if (n_th < 0) throw std::invalid_argument("fidelity_at_threshold: n_th must be >= 0");
  FidelityReport r;
  r.threshold = n_th;
  r.rule = rule;
  if (rule == BrightRule::CountAtOrAbove) {
    r.p_correct_bright = tail_sum(bright, n_th);
    r.p_correct_dark = 1.0 - tail_sum(dark, n_th);
  } else {
    r.p_correct_bright = 1.0 - tail_sum(bright, n_th);
    r.p_correct_dark = tail_sum(dark, n_th);
  }
  r.fidelity = std::min(r.p_correct_bright, r.p_correct_dark);
  return r;
}

FidelityReport optimal_threshold(const CountDistribution& bright,
                                 const CountDistribution& dark, BrightRule rule) {
  const int n_hi = static_cast<int>(std::max(bright.n_max(), dark.n_max())) + 2;
  FidelityReport best = fidelity_at_threshold(bright, dark, 0, rule);
  for (int n_th = 1; n_th < n_hi; ++n_th) {
    const FidelityReport r = fidelity_at_threshold(bright, dark, n_th, rule);
    if (r.fidelity > best.fidelity) best = r;
  }
  return best;
}

MlRule ml_classifier(const CountDistribution& bright, const CountDistribution& dark) {
  const std::size_t n_max = std::max(bright.n_max(), dark.n_max());
  MlRule rule;
  rule.assign_bright.assign(n_max + 1, 0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (bright.p(n) > dark.p(n)) {
      rule.assign_bright[n] = 1;
      rule.p_correct_bright += bright.p(n);
    } else {
      rule.p_correct_dark += dark.p(n);
    }
  }
  rule.fidelity = std::min(rule.p_correct_bright, rule.p_correct_dark);

  // Detect whether the assignment collapses to a simple threshold.
  std::size_t first_bright = n_max + 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (rule.assign_bright[n]) {
      first_bright = n;
      break;
    }
  }
  rule.is_threshold_rule = true;
  for (std::size_t n = first_bright; n <= n_max; ++n) {
    if (!rule.assign_bright[n]) {
      rule.is_threshold_rule = false;
      break;
    }
  }
  rule.equivalent_threshold = rule.is_threshold_rule ? static_cast<int>(first_bright) : -1;
  return rule;
}

}  // namespace readout
