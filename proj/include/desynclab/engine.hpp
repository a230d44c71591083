#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "desynclab/params.hpp"

namespace desynclab {

struct SimConfig {
  ProtocolParams params;
  Protocol protocol = Protocol::kDesync;
  int detection_window = 10;  // consecutive clean cycles to declare
  long max_cycles = 5000;     // abort cap per node
  std::uint64_t seed = 0;
  // Empty: draw i.i.d. uniform initial phases. Otherwise one value per node,
  // used verbatim.
  std::vector<double> initial_phases;

  void validate() const {
    params.validate();
    if (detection_window < 1)
      throw std::invalid_argument("detection_window must be >= 1");
    if (max_cycles <= detection_window)
      throw std::invalid_argument("max_cycles must exceed detection_window");
    if (!initial_phases.empty() &&
        initial_phases.size() != static_cast<std::size_t>(params.w))
      throw std::invalid_argument(
          "initial_phases must be empty or provide one phase per node");
  }
};

struct TrialRecord {
  // Cycle at which each node's clean streak began; empty when the trial
  // aborted at max_cycles.
  std::vector<long> per_node_cycles;
  long network_cycles = 0;  // max over nodes; 0 when not converged
  bool converged = false;
  std::uint64_t seed = 0;

  // Diagnostics, valid either way.
  long pco_updates_first_period = 0;  // updates at t < T across all nodes
  long desync_updates = 0;
};

// One full event-driven run: W fully-meshed nodes, misfires, noise, and
// per-node streak detection. Deterministic given the seed.
TrialRecord run_trial(const SimConfig& config);

}  // namespace desynclab
