#pragma once

#include <cstdint>
#include <vector>

#include "desynclab/engine.hpp"

namespace desynclab {

// Across-trial samples of one node's phase deviation after a given number
// of updates of the unwrapped update process: initial deviations i.i.d.
// uniform over a full period, every heard phase perturbed by the speaker's
// noise draw for that round. This is the process the closed-form sigma
// trajectories describe; the wrapped event simulation rides on top of it.
// Trial i uses seed config.seed + i. update_index 0 returns the initial
// draws.
std::vector<double> update_process_samples(const SimConfig& config,
                                           int update_index, long n_samples);

struct DiagnosticReport {
  int update_index = 0;
  long n_samples = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_normal = 0.0;
  double ks_uniform = 0.0;
};

// Shape statistics of the update-process marginal at the given index.
DiagnosticReport normality_diagnostic(const SimConfig& config,
                                      int update_index, long n_samples);

}  // namespace desynclab
