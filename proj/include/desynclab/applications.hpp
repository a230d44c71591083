#pragma once

#include <cstdint>

#include "desynclab/estimators.hpp"

namespace desynclab {

struct ChurnScenario {
  double b_wsn_bps = 86000.0;  // application-layer bandwidth to share
  double t_swap_s = 100.0;     // mean time between membership changes
  // Optional uniform range for t_swap; enables the sampled average.
  bool has_range = false;
  double t_swap_lo_s = 0.0;
  double t_swap_hi_s = 0.0;
  long mc_samples = 100000;
  std::uint64_t seed = 1;
};

struct BandwidthResult {
  double bps = 0.0;
  long k = 0;  // model convergence cycles spent after each swap
  bool clamped = false;        // re-convergence eats the whole swap interval
  bool noise_limited = false;  // estimator flag passed through
};

// Expected per-node bandwidth when the schedule re-converges after every
// membership change: (1 - k*T/t_swap) * b_wsn / w, floored at zero.
BandwidthResult bandwidth_per_node(
    const ChurnScenario& s, const ProtocolParams& params, Protocol protocol,
    DesyncSigmaMode desync_mode = DesyncSigmaMode::kRefresh,
    PcoIndexMode pco_mode = PcoIndexMode::kCycle);

struct PeriodResult {
  double t_s = 0.0;       // chosen firing period
  double prev_t_s = 0.0;  // previous iterate, equal to t_s on convergence
  long k = 0;             // model cycles at the returned period
  int iterations = 0;
  bool converged = true;
  bool noise_limited = false;
};

// Pick T so the model's convergence time k(T)*T matches t_sstate. The
// measured noise is a time, so its phase value scales as 1/T; the fixed
// point iterates T <- t_sstate / k(T) until successive periods agree within
// 1 ms. renormalize=false skips the feedback and returns t_sstate / k at
// T = 1 s directly.
PeriodResult solve_period(double t_sstate_s, const ProtocolParams& params,
                          Protocol protocol, bool renormalize = true,
                          DesyncSigmaMode desync_mode = DesyncSigmaMode::kRefresh,
                          PcoIndexMode pco_mode = PcoIndexMode::kCycle);

}  // namespace desynclab
