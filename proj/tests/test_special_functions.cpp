#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "desynclab/special_functions.hpp"

// Calls stay desynclab-qualified: <cmath> drags ::erf/::erfc into scope.
using desynclab::erf_inv;

namespace {

// Independent integral oracle: adaptive Simpson of the Gaussian kernel.
double gauss(double t) {
  return 1.1283791670955126 * std::exp(-t * t);  // 2/sqrt(pi)
}

double simpson(double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (gauss(a) + 4.0 * gauss(m) + gauss(b));
}

double adaptive(double a, double b, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(a, m);
  const double right = simpson(m, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 1e-14)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, left, depth - 1) + adaptive(m, b, right, depth - 1);
}

double erf_quadrature(double x) {
  if (x == 0.0) return 0.0;
  const double ax = std::fabs(x);
  const double r = adaptive(0.0, ax, simpson(0.0, ax), 40);
  return x < 0.0 ? -r : r;
}

// Independent inverse oracle: plain bisection on the quadrature-checked erf.
double erf_inv_bisect(double u) {
  double lo = 0.0, hi = 6.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (desynclab::erf(mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("erf matches the quadrature oracle and the standard library") {
  for (double x = -6.0; x <= 6.0; x += 0.0625) {
    CHECK(std::fabs(desynclab::erf(x) - erf_quadrature(x)) <= 1e-12);
    CHECK(std::fabs(desynclab::erf(x) - std::erf(x)) <= 1e-12);
  }
  CHECK(std::fabs(desynclab::erf(1.0) - 0.8427007929497149) <= 1e-14);
  CHECK(desynclab::erf(0.0) == 0.0);
  CHECK(desynclab::erf(-2.0) == -desynclab::erf(2.0));
  CHECK(desynclab::erf(10.0) == 1.0);
}

TEST_CASE("erfc complements erf on both evaluation branches") {
  for (double x : {0.0, 0.5, 1.0, 2.0, 2.9, 3.0, 3.5, 5.0, -1.0, -4.0}) {
    CHECK(std::fabs(desynclab::erf(x) + desynclab::erfc(x) - 1.0) <= 1e-13);
  }
  // Tail branch against the quadrature complement and the standard library.
  CHECK(std::fabs(desynclab::erfc(3.0) - (1.0 - erf_quadrature(3.0))) <= 1e-12);
  CHECK(std::fabs(desynclab::erfc(4.0) - std::erfc(4.0)) <= 1e-16);
  CHECK(desynclab::erfc(6.0) > 0.0);
  CHECK(desynclab::erfc(-4.0) == 2.0 - desynclab::erfc(4.0));
}

TEST_CASE("erf_inv agrees with the bisection oracle") {
  for (double u : {0.1, 0.5, 0.7, 0.9, 0.99, 0.999, 0.9999, 0.99999}) {
    const double got = erf_inv(u);
    const double want = erf_inv_bisect(u);
    CHECK(std::fabs(got - want) <= 1e-12 * (1.0 + want));
  }
  CHECK(std::fabs(erf_inv(0.9999) - 2.751063905711985) <= 1e-12);
  CHECK(erf_inv(0.0) == 0.0);
  CHECK(erf_inv(-0.7) == -erf_inv(0.7));
}

TEST_CASE("erf / erf_inv round trip stays under 1e-9 across 1000 points") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = -0.999999 + (2.0 * 0.999999) * i / 999.0;
    const double err = std::fabs(desynclab::erf(erf_inv(u)) - u);
    if (err > worst) worst = err;
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("erf_inv rejects arguments outside (-1, 1)") {
  CHECK_THROWS_AS(erf_inv(1.0), std::domain_error);
  CHECK_THROWS_AS(erf_inv(-1.0), std::domain_error);
  CHECK_THROWS_AS(erf_inv(1.5), std::domain_error);
}

TEST_CASE("partial sums of erf differences telescope") {
  for (double c : {0.1, 1.0, 10.0}) {
    for (int b = 1; b <= 20; ++b) {
      double lhs = 0.5 * desynclab::erf(1.0 / c);
      for (int j = 1; j <= b; ++j)
        lhs += desynclab::erf((j + 1) / c) - desynclab::erf(j / c);
      const double rhs =
          desynclab::erf((b + 1) / c) - 0.5 * desynclab::erf(1.0 / c);
      CHECK(std::fabs(lhs - rhs) <= 1e-12);
    }
  }
}
