#pragma once

#include <cstdint>
#include <vector>

#include "readout/counting.hpp"

namespace readout {

// Direction of the count threshold.  Fluorescence readout declares bright
// for N >= n_th; transmission readout looks for the dip, N < n_th.
enum class BrightRule { CountAtOrAbove, CountBelow };

struct FidelityReport {
  int threshold = 0;
  double p_correct_bright = 0.0;  // P(assigned bright | bright)
  double p_correct_dark = 0.0;    // P(assigned dark | dark)
  double fidelity = 0.0;          // min of the two conditionals
  BrightRule rule = BrightRule::CountAtOrAbove;
};

// Exact tail/head sums of the two pmfs at a fixed threshold.  Preparation
// errors, when modeled, are expected to be folded into the pmfs already.
FidelityReport fidelity_at_threshold(const CountDistribution& bright,
                                     const CountDistribution& dark, int n_th,
                                     BrightRule rule = BrightRule::CountAtOrAbove);

// Exhaustive scan over n_th in 0..N_max+1; ties resolved toward the smallest
// threshold.
FidelityReport optimal_threshold(const CountDistribution& bright,
                                 const CountDistribution& dark,
                                 BrightRule rule = BrightRule::CountAtOrAbove);

// Per-count maximum-likelihood assignment; ties go to dark.
struct MlRule {
  std::vector<std::uint8_t> assign_bright;  // index N -> 1 when assigned bright
  double p_correct_bright = 0.0;
  double p_correct_dark = 0.0;
  double fidelity = 0.0;
  bool is_threshold_rule = false;  // assignment is of the form N >= n
  int equivalent_threshold = -1;
};

MlRule ml_classifier(const CountDistribution& bright, const CountDistribution& dark);

}  // namespace readout
