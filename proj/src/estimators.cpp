#include "desynclab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "desynclab/kernel.hpp"
#include "desynclab/special_functions.hpp"

namespace desynclab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Per-cycle variance retention of the 3-tap kernel under fresh neighbors.
double refresh_q(double alpha) {
  return 0.5 * alpha * alpha + (1.0 - alpha) * (1.0 - alpha);
}

// Forward scan for the first index whose objective stops improving.
// `objective` must be unimodal: decreasing toward its minimum, then
// non-decreasing. Ties stop the scan, keeping the smaller index.
template <class Objective>
long scan_first_turn(Objective objective, const char* what) {
  double prev = objective(1);
  for (long k = 2; k <= kScanCap; ++k) {
    const double cur = objective(k);
    if (cur >= prev) return k - 1;
    prev = cur;
  }
  throw ScanCapExceeded(std::string(what) +
                        ": no turning point within the scan cap");
}

}  // namespace

double target_sigma(double b_thres, double c_conf) {
  if (!(b_thres > 0.0)) throw std::invalid_argument("b_thres must be > 0");
  return b_thres / (kSqrt2 * erf_inv(c_conf));
}

double sigma_desync(const ProtocolParams& p, long k) {
  if (k < 1) throw std::invalid_argument("sigma_desync: k >= 1");
  KernelPowerSequence seq(p.alpha, p.w);
  const double sd = p.normalized_sigma_delta();
  const double var = seq.norm_sq(k) * kInitialPhaseSigma * kInitialPhaseSigma +
                     seq.cumulative_norm_sq(k) * sd * sd;
  return std::sqrt(var);
}

double sigma_desync_refresh(const ProtocolParams& p, long k) {
  if (k < 1) throw std::invalid_argument("sigma_desync_refresh: k >= 1");
  const double q = refresh_q(p.alpha);
  const double sd = p.normalized_sigma_delta();
  const double qk = std::pow(q, static_cast<double>(k));
  const double var = qk / 12.0 + sd * sd * q * (1.0 - qk) / (1.0 - q);
  return std::sqrt(var);
}

double sigma_desync_refresh_floor(const ProtocolParams& p) {
  const double q = refresh_q(p.alpha);
  return p.normalized_sigma_delta() * std::sqrt(q / (1.0 - q));
}

double sigma_pco(const ProtocolParams& p, long l) {
  if (l < 1) throw std::invalid_argument("sigma_pco: l >= 1");
  const double a = p.alpha;
  const double sd = p.normalized_sigma_delta();
  const double g = std::pow(1.0 - a, 2.0 * static_cast<double>(l));
  const double coeff = (a - 1.0) * (a - 1.0) / (a * (a - 2.0));
  const double var = g / 12.0 + coeff * (g - 1.0) * sd * sd;
  return std::sqrt(var);
}

double sigma_pco_floor(const ProtocolParams& p) {
  const double a = p.alpha;
  return p.normalized_sigma_delta() * (1.0 - a) / std::sqrt(a * (2.0 - a));
}

double expected_updates_at_sigma(const ProtocolParams& p, double sigma) {
  if (sigma <= 0.0) return 0.5;  // both erf terms saturate
  const double denom = p.w * sigma * kSqrt2;
  const double upper = (std::floor(p.w / 2.0) + 1.0) / denom;
  return erf(upper) - 0.5 * erf(1.0 / denom);
}

double expected_updates_per_cycle(const ProtocolParams& p, long l) {
  if (l < 2) throw std::invalid_argument("expected_updates_per_cycle: l >= 2");
  return expected_updates_at_sigma(p, sigma_pco(p, l));
}

EstimateResult estimate_desync_cycles(const ProtocolParams& p,
                                      DesyncSigmaMode mode) {
  p.validate();
  EstimateResult r;
  r.target_sigma = target_sigma(p.b_thres, p.c_conf);

  if (mode == DesyncSigmaMode::kRefresh) {
    const long k = scan_first_turn(
        [&](long i) {
          return std::fabs(sigma_desync_refresh(p, i) - r.target_sigma);
        },
        "estimate_desync_cycles");
    r.cycles = k;
    r.achieved_sigma = sigma_desync_refresh(p, k);
    r.noise_limited = sigma_desync_refresh_floor(p) >= r.target_sigma;
    r.trajectory.reserve(k + 1);
    for (long i = 1; i <= k + 1; ++i)
      r.trajectory.push_back(sigma_desync_refresh(p, i));
  } else {
    KernelPowerSequence seq(p.alpha, p.w);
    const double sd = p.normalized_sigma_delta();
    const double s0 = kInitialPhaseSigma * kInitialPhaseSigma;
    auto sigma_at = [&](long i) {
      return std::sqrt(seq.norm_sq(i) * s0 +
                       seq.cumulative_norm_sq(i) * sd * sd);
    };
    std::vector<double> seen;
    const long k = scan_first_turn(
        [&](long i) {
          const double s = sigma_at(i);
          seen.push_back(s);
          return std::fabs(s - r.target_sigma);
        },
        "estimate_desync_cycles");
    r.cycles = k;
    r.achieved_sigma = seen[k - 1];
    // The convolved trajectory reaches a true interior minimum (noise keeps
    // accumulating afterwards), so the scan minimum is the global floor.
    double min_sigma = seen[0];
    for (double s : seen) min_sigma = std::min(min_sigma, s);
    r.noise_limited = min_sigma > r.target_sigma;
    r.trajectory = std::move(seen);
  }
  r.phase_updates = r.cycles;  // one averaging update per firing cycle
  return r;
}

EstimateResult estimate_pco_cycles(const ProtocolParams& p, PcoIndexMode mode) {
  p.validate();
  EstimateResult r;
  r.target_sigma = target_sigma(p.b_thres, p.c_conf);

  // Stage 1: updates needed for the spread to settle at the target.
  std::vector<double> seen;
  const long l_ss = scan_first_turn(
      [&](long l) {
        const double s = sigma_pco(p, l);
        seen.push_back(s);
        return std::fabs(s - r.target_sigma);
      },
      "estimate_pco_cycles[updates]");
  r.phase_updates = l_ss;
  r.achieved_sigma = seen[l_ss - 1];
  r.noise_limited = sigma_pco_floor(p) >= r.target_sigma;
  r.trajectory = std::move(seen);

  // Stage 2: firing cycles whose cumulative expected update count lands
  // nearest the stage-1 total. The first cycle contributes 1 - 1/w.
  const double first = 1.0 - 1.0 / p.w;
  double total = first;
  double prev_obj = std::fabs(total - static_cast<double>(l_ss));
  long cycles = 1;
  for (long k = 2; k <= kScanCap; ++k) {
    double sigma;
    if (mode == PcoIndexMode::kCycle) {
      sigma = sigma_pco(p, k);
    } else {
      const long idx =
          std::max<long>(1, static_cast<long>(std::ceil(total)));
      sigma = sigma_pco(p, idx);
    }
    total += expected_updates_at_sigma(p, sigma);
    const double obj = std::fabs(total - static_cast<double>(l_ss));
    if (obj >= prev_obj) {
      cycles = k - 1;
      break;
    }
    prev_obj = obj;
    if (k == kScanCap)
      throw ScanCapExceeded(
          "estimate_pco_cycles[cycles]: no turning point within the scan cap");
  }
  r.cycles = cycles;
  return r;
}

double desync_order_conjecture(const ProtocolParams& p, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("desync_order_conjecture: scale must be > 0");
  return scale * (1.0 / p.alpha) * p.w * p.w * std::log(1.0 / p.b_thres);
}

PcoBound pco_lower_bound(const ProtocolParams& p) {
  PcoBound b;
  b.assumption_violated = !(1.0 - 1.0 / p.w > p.alpha);
  const double denom = std::log(1.0 - p.alpha) + std::log(p.w);
  if (std::fabs(denom) < 1e-12) {
    b.singular = true;
    return b;
  }
  const double numer =
      std::log(p.b_thres) -
      std::log(2.0 + 2.0 / (std::pow(p.alpha, p.w) * (1.0 - p.alpha)));
  b.k = static_cast<long>(std::ceil(numer / denom));
  return b;
}

}  // namespace desynclab
