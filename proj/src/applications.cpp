#include "desynclab/applications.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "desynclab/rng.hpp"

namespace desynclab {

namespace {

EstimateResult run_estimator(const ProtocolParams& params, Protocol protocol,
                             DesyncSigmaMode desync_mode,
                             PcoIndexMode pco_mode) {
  return protocol == Protocol::kDesync
             ? estimate_desync_cycles(params, desync_mode)
             : estimate_pco_cycles(params, pco_mode);
}

}  // namespace

BandwidthResult bandwidth_per_node(const ChurnScenario& s,
                                   const ProtocolParams& params,
                                   Protocol protocol,
                                   DesyncSigmaMode desync_mode,
                                   PcoIndexMode pco_mode) {
  if (!(s.b_wsn_bps > 0.0))
    throw std::invalid_argument("b_wsn_bps must be positive");
  if (!(s.t_swap_s > 0.0))
    throw std::invalid_argument("t_swap_s must be positive");
  if (s.has_range &&
      !(s.t_swap_lo_s > 0.0 && s.t_swap_hi_s >= s.t_swap_lo_s))
    throw std::invalid_argument("t_swap range must satisfy 0 < lo <= hi");

  const EstimateResult est =
      run_estimator(params, protocol, desync_mode, pco_mode);
  const double busy = static_cast<double>(est.cycles) * params.period_s;

  BandwidthResult r;
  r.k = est.cycles;
  r.noise_limited = est.noise_limited;

  double fraction;
  if (s.has_range) {
    // Sampled average of the usable fraction over the swap-interval range,
    // clamping each draw like the point formula does.
    std::mt19937_64 rng = make_rng(s.seed);
    std::uniform_real_distribution<double> swap(s.t_swap_lo_s, s.t_swap_hi_s);
    double acc = 0.0;
    for (long i = 0; i < s.mc_samples; ++i) {
      const double f = 1.0 - busy / swap(rng);
      if (f <= 0.0) {
        r.clamped = true;
      } else {
        acc += f;
      }
    }
    fraction = acc / static_cast<double>(s.mc_samples);
  } else {
    fraction = 1.0 - busy / s.t_swap_s;
    if (fraction <= 0.0) {
      fraction = 0.0;
      r.clamped = true;
    }
  }
  r.bps = fraction * s.b_wsn_bps / params.w;
  return r;
}

PeriodResult solve_period(double t_sstate_s, const ProtocolParams& params,
                          Protocol protocol, bool renormalize,
                          DesyncSigmaMode desync_mode, PcoIndexMode pco_mode) {
  if (!(t_sstate_s > 0.0))
    throw std::invalid_argument("t_sstate_s must be positive");

  auto cycles_at = [&](double period) {
    ProtocolParams q = params;
    q.period_s = period;
    return run_estimator(q, protocol, desync_mode, pco_mode);
  };

  PeriodResult r;
  EstimateResult est = cycles_at(1.0);
  double t = t_sstate_s / static_cast<double>(est.cycles);
  r.iterations = 1;

  if (!renormalize || params.sigma_delta_s == 0.0) {
    // Without the 1/T noise feedback the first step is already the answer.
    r.t_s = t;
    r.prev_t_s = t;
    r.k = est.cycles;
    r.noise_limited = est.noise_limited;
    return r;
  }

  double prev = t;
  for (int it = 2; it <= 50; ++it) {
    est = cycles_at(t);
    const double next = t_sstate_s / static_cast<double>(est.cycles);
    r.iterations = it;
    prev = t;
    t = next;
    if (std::fabs(t - prev) < 1e-3) {
      r.converged = true;
      r.t_s = t;
      r.prev_t_s = prev;
      est = cycles_at(t);
      r.k = est.cycles;
      r.noise_limited = est.noise_limited;
      return r;
    }
  }
  r.converged = false;  // cycling between quantized iterates; report both
  r.t_s = t;
  r.prev_t_s = prev;
  est = cycles_at(t);
  r.k = est.cycles;
  r.noise_limited = est.noise_limited;
  return r;
}

}  // namespace desynclab
