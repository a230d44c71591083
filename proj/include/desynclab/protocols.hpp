#pragma once

#include <cmath>

#include "desynclab/phase.hpp"

namespace desynclab {

// One averaging step toward the midpoint of the neighboring firings. Every
// measured phase carries its own noise sample, including the "next" firing
// whose phase is zero by construction at the update instant.
inline Phase desync_updated_phase(double own, double prev, double next,
                                  double alpha, double noise_own,
                                  double noise_prev, double noise_next) {
  return Phase((1.0 - alpha) * (own + noise_own) +
               0.5 * alpha * (prev + noise_prev + next + noise_next));
}

// Inhibitory jump toward the start of the listening interval at 1 - 1/w.
inline Phase pco_updated_phase(double own, double alpha, int w,
                               double noise_own) {
  return Phase((1.0 - alpha) * (own + noise_own) + alpha * (1.0 - 1.0 / w));
}

// The listening interval is the open tail (1 - 1/w, 1).
inline bool in_listening_interval(double phase, int w) {
  return phase > 1.0 - 1.0 / w && phase < 1.0;
}

// Gap check: the spacing to the previous firing deviates from the fair
// share 1/w by at most b_thres. `gap` is elapsed time over the period.
inline bool gap_within_threshold(double gap, int w, double b_thres) {
  return std::fabs(gap - 1.0 / w) <= b_thres;
}

inline bool convergence_check(Phase own, Phase prev, int w, double b_thres) {
  return gap_within_threshold(Phase::wrap(own.value() - prev.value()), w,
                              b_thres);
}

}  // namespace desynclab
