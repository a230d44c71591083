#pragma once

#include <cstdint>
#include <vector>

#include "desynclab/engine.hpp"

namespace desynclab {

struct GridSummary {
  Protocol protocol = Protocol::kDesync;
  int w = 0;
  double alpha = 0.0;
  double b_thres = 0.0;
  int n_trials = 0;
  int non_converged = 0;
  // Over converged trials' network cycles; NaN when undefined.
  double mean_cycles = 0.0;
  double std_cycles = 0.0;
  // Per-node mean update count during the first period (inhibitory runs).
  double mean_first_period_updates = 0.0;
};

// 0 requests one worker per hardware thread.
int resolve_thread_count(int requested);

// Trials of one cell; trial i runs with seed base_seed + i. Results are
// ordered by trial index regardless of worker scheduling.
std::vector<TrialRecord> run_cell(const SimConfig& cell, int trials,
                                  std::uint64_t base_seed, int threads);

GridSummary summarize(const SimConfig& cell,
                      const std::vector<TrialRecord>& trials);

// Every cell runs the same trial seeds base_seed..base_seed+trials-1.
// Cells and trials are distributed over the workers; aggregation order is
// fixed, so the output is identical for any worker count.
std::vector<GridSummary> run_grid(const std::vector<SimConfig>& cells,
                                  int trials_per_cell,
                                  std::uint64_t base_seed, int threads);

}  // namespace desynclab
