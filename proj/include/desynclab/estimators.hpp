#pragma once

#include <stdexcept>
#include <vector>

#include "desynclab/params.hpp"

namespace desynclab {

// Initial phase spread: uniform over the whole ring, std 1/sqrt(12).
inline constexpr double kInitialPhaseSigma = 0.28867513459481287;

// Hard cap on every forward scan; overrunning it is an error, not a result.
inline constexpr long kScanCap = 100000;

struct ScanCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phase std at which the gap check holds with probability c_conf.
double target_sigma(double b_thres, double c_conf);

// How the per-cycle averaging is propagated across cycles:
//   kConvolution: the node keeps mixing its neighbors' accumulated phases,
//                 so cycle k applies the k-fold self-convolved kernel.
//   kRefresh:     neighbor phases are treated as freshly drawn each cycle,
//                 giving a plain geometric contraction per cycle.
enum class DesyncSigmaMode { kConvolution, kRefresh };

// How the per-update sigma index maps to firing cycles when counting
// expected updates per cycle:
//   kCycle:      cycle m uses the sigma with index m directly.
//   kCumulative: cycle m uses the sigma at the number of updates completed
//                so far, rounded up.
enum class PcoIndexMode { kCycle, kCumulative };

// Closed-form phase std after k averaging cycles, convolution form.
double sigma_desync(const ProtocolParams& p, long k);

// Same statistic under per-cycle neighbor refresh.
double sigma_desync_refresh(const ProtocolParams& p, long k);

// Asymptote of the refresh trajectory (noise in, contraction out).
double sigma_desync_refresh_floor(const ProtocolParams& p);

// Closed-form phase std after l inhibitory updates.
double sigma_pco(const ProtocolParams& p, long l);

// Asymptote of the inhibitory trajectory.
double sigma_pco_floor(const ProtocolParams& p);

// Expected number of phase updates in a cycle whose update spread is sigma.
double expected_updates_at_sigma(const ProtocolParams& p, double sigma);

// Same, with sigma taken from the closed form at update index l (l >= 2).
double expected_updates_per_cycle(const ProtocolParams& p, long l);

struct EstimateResult {
  long cycles = 0;            // firing cycles to steady state
  double achieved_sigma = 0.0;
  double target_sigma = 0.0;
  bool noise_limited = false;  // the trajectory floor sits above the target
  long phase_updates = 0;      // updates behind `cycles` (== cycles for the
                               // averaging protocol)
  std::vector<double> trajectory;  // sigma at 1-based index i+1
};

EstimateResult estimate_desync_cycles(
    const ProtocolParams& p, DesyncSigmaMode mode = DesyncSigmaMode::kRefresh);

EstimateResult estimate_pco_cycles(const ProtocolParams& p,
                                   PcoIndexMode mode = PcoIndexMode::kCycle);

// Scaled order-of-magnitude iteration count (1/alpha) w^2 ln(1/b_thres).
double desync_order_conjecture(const ProtocolParams& p, double scale);

struct PcoBound {
  long k = 0;
  bool singular = false;             // (1-alpha) w == 1: formula pole, no value
  bool assumption_violated = false;  // needs alpha < 1 - 1/w
};

// Closed-form lower bound on inhibitory convergence cycles; negative values
// are reported verbatim.
PcoBound pco_lower_bound(const ProtocolParams& p);

}  // namespace desynclab
