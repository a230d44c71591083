#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "desynclab/protocols.hpp"

using namespace desynclab;

namespace {
bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
}  // namespace

TEST_CASE("averaging update leaves the equidistant point fixed") {
  // Neighbors sit symmetrically around own phase; the noiseless update must
  // not move it.
  const double own = 0.125, prev = 0.25, next = 0.0;
  CHECK(desync_updated_phase(own, prev, next, 0.5, 0, 0, 0).value() == 0.125);
  CHECK(close(desync_updated_phase(own, prev, next, 0.3, 0, 0, 0).value(),
              0.125, 1e-15));
}

TEST_CASE("averaging update wraps its result onto the unit ring") {
  // Inputs may carry whole extra turns from the unwrapped clock.
  const double got = desync_updated_phase(1.2, 1.8, 0.0, 0.5, 0, 0, 0).value();
  CHECK(close(got, 0.05, 1e-12));
  CHECK(got >= 0.0);
  CHECK(got < 1.0);
}

TEST_CASE("averaging update endpoints of the coupling strength") {
  // alpha=0 keeps the own (noised) phase; alpha=1 jumps to the neighbor
  // midpoint.
  CHECK(desync_updated_phase(0.3, 0.6, 0.1, 0.0, 0, 0, 0).value() == 0.3);
  CHECK(close(desync_updated_phase(0.3, 0.6, 0.1, 1.0, 0, 0, 0).value(), 0.35,
              1e-15));
}

TEST_CASE("averaging update applies all three noise samples") {
  const double got =
      desync_updated_phase(0.2, 0.5, 0.0, 0.5, 0.01, -0.02, 0.03).value();
  const double want = 0.5 * (0.2 + 0.01) + 0.25 * (0.5 - 0.02 + 0.0 + 0.03);
  CHECK(close(got, want, 1e-15));
}

TEST_CASE("inhibitory update: value, fixed point, endpoints") {
  // (1-a)*own + a*(1-1/w)
  CHECK(pco_updated_phase(0.9, 0.5, 4, 0.0).value() == 0.825);
  CHECK(pco_updated_phase(0.75, 0.5, 4, 0.0).value() == 0.75);
  CHECK(pco_updated_phase(0.9, 1.0, 4, 0.0).value() == 0.75);
  CHECK(pco_updated_phase(0.9, 0.0, 4, 0.0).value() == 0.9);
}

TEST_CASE("inhibitory update contracts onto the fixed point") {
  double x = 0.99;
  for (int i = 0; i < 60; ++i) x = pco_updated_phase(x, 0.5, 4, 0.0).value();
  CHECK(close(x, 0.75, 1e-12));
}

TEST_CASE("listening interval is the open tail of the cycle") {
  CHECK_FALSE(in_listening_interval(0.75, 4));  // boundary excluded
  CHECK(in_listening_interval(0.76, 4));
  CHECK(in_listening_interval(0.9999, 4));
  CHECK_FALSE(in_listening_interval(1.0, 4));
  CHECK_FALSE(in_listening_interval(0.0, 4));
  CHECK_FALSE(in_listening_interval(0.5, 4));
}

TEST_CASE("gap test is inclusive at the threshold") {
  // Dyadic values so the boundary |0.1875 - 0.125| == 0.0625 is exact in
  // binary; a strict comparison would reject it.
  CHECK(gap_within_threshold(0.1875, 8, 0.0625));
  CHECK_FALSE(gap_within_threshold(0.1875 + 1e-9, 8, 0.0625));
  CHECK(gap_within_threshold(0.0625, 8, 0.0625));
  CHECK(gap_within_threshold(0.125, 8, 0.001));
  CHECK_FALSE(gap_within_threshold(0.2, 8, 0.001));
}

TEST_CASE("convergence check handles a wrapped predecessor") {
  // own=0.05, prev heard at 0.93: the gap is 0.12 through the wrap.
  CHECK(convergence_check(Phase(0.05), Phase(0.93), 8, 0.02));
  CHECK_FALSE(convergence_check(Phase(0.05), Phase(0.93), 8, 0.001));
}
