#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "desynclab/applications.hpp"

using namespace desynclab;

namespace {

ProtocolParams make(double alpha, double b, int w = 10,
                    double sigma_delta = 3.4e-4) {
  ProtocolParams p;
  p.alpha = alpha;
  p.b_thres = b;
  p.w = w;
  p.sigma_delta_s = sigma_delta;
  return p;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("bandwidth under churn: fast settling keeps most of the share") {
  ChurnScenario s;  // defaults: 86 kbps shared, swaps every 100 s
  const BandwidthResult r =
      bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco);
  CHECK(r.k == 5);
  // (1 - 5/100) * 86000 / 10 = 8170
  CHECK(close(r.bps, 8170.0, 1e-9));
  CHECK_FALSE(r.clamped);
  CHECK_FALSE(r.noise_limited);
}

TEST_CASE("bandwidth under churn: slow settling eats the interval") {
  ChurnScenario s;
  const BandwidthResult r =
      bandwidth_per_node(s, make(0.25, 0.001), Protocol::kDesync);
  CHECK(r.noise_limited);  // threshold below the refresh noise floor
  CHECK(r.bps < 1000.0);
  CHECK(r.bps > 0.0);

  s.t_swap_s = 1.0;  // swaps faster than any re-convergence
  const BandwidthResult z =
      bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco);
  CHECK(z.clamped);
  CHECK(z.bps == 0.0);
}

TEST_CASE("bandwidth under churn: sampled swap interval") {
  ChurnScenario s;
  s.has_range = true;
  s.t_swap_lo_s = 100.0;
  s.t_swap_hi_s = 100.0;
  // Accumulating 1e5 identical summands drifts a few ulps per add, so the
  // degenerate range only matches the point formula to ~1e-3 bps.
  const BandwidthResult point =
      bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco);
  CHECK(close(point.bps, 8170.0, 1e-3));

  s.t_swap_lo_s = 50.0;
  s.t_swap_hi_s = 150.0;
  s.mc_samples = 200000;
  const BandwidthResult r =
      bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco);
  // E[1/t_swap] over U(50, 150) is ln(3)/100, giving ~8127.6 bps.
  CHECK(close(r.bps, 8600.0 - 430.0 * std::log(3.0), 4.0));
  CHECK_FALSE(r.clamped);
}

TEST_CASE("bandwidth under churn: scenario validation") {
  ChurnScenario s;
  s.b_wsn_bps = 0.0;
  CHECK_THROWS_AS(bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco),
                  std::invalid_argument);
  s = ChurnScenario{};
  s.t_swap_s = 0.0;
  CHECK_THROWS_AS(bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco),
                  std::invalid_argument);
  s = ChurnScenario{};
  s.has_range = true;
  s.t_swap_lo_s = 150.0;
  s.t_swap_hi_s = 50.0;
  CHECK_THROWS_AS(bandwidth_per_node(s, make(0.95, 0.001), Protocol::kPco),
                  std::invalid_argument);
}

TEST_CASE("period selection: fixed point for the fast inhibitory setup") {
  const PeriodResult r = solve_period(10.0, make(0.95, 0.001), Protocol::kPco);
  CHECK(r.converged);
  CHECK(close(r.t_s, 2.0, 1e-9));
  CHECK(r.k == 5);
  CHECK(r.iterations == 2);
  CHECK(r.prev_t_s == r.t_s);
}

TEST_CASE("period selection: noise-free model needs a single step") {
  const PeriodResult r =
      solve_period(10.0, make(0.95, 0.001, 10, 0.0), Protocol::kPco);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(close(r.t_s, 2.0, 1e-9));
}

TEST_CASE("period selection: renormalization off reproduces the first step") {
  const PeriodResult with = solve_period(10.0, make(0.25, 0.02), Protocol::kPco);
  const PeriodResult without =
      solve_period(10.0, make(0.25, 0.02), Protocol::kPco, false);
  CHECK(without.iterations == 1);
  CHECK(close(without.t_s, 10.0 / 26.0, 1e-12));
  // Here the noise term is small enough that feedback lands on the same k.
  CHECK(with.converged);
  CHECK(with.k == 26);
  CHECK(close(with.t_s, without.t_s, 1e-12));
}

TEST_CASE("period selection: slow averaging setup fails to settle") {
  // The iteration oscillates between two adjacent cycle counts whose
  // periods differ by more than the 1 ms tolerance.
  const PeriodResult r =
      solve_period(10.0, make(0.25, 0.001), Protocol::kDesync);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 50);
  CHECK(r.t_s > 0.10);
  CHECK(r.t_s < 0.13);
  CHECK(std::fabs(r.t_s - r.prev_t_s) >= 1e-3);
}

TEST_CASE("period selection: fast averaging setup settles") {
  const PeriodResult r =
      solve_period(10.0, make(0.95, 0.001), Protocol::kDesync);
  CHECK(r.converged);
  CHECK(r.k == 58);
  CHECK(close(r.t_s, 10.0 / 58.0, 1e-12));
  CHECK(r.iterations == 3);
}

TEST_CASE("period selection: target validation") {
  CHECK_THROWS_AS(solve_period(0.0, make(0.95, 0.001), Protocol::kPco),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_period(-1.0, make(0.95, 0.001), Protocol::kPco),
                  std::invalid_argument);
}
