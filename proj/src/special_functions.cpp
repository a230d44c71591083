#include "desynclab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace desynclab {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;
constexpr double kSqrtPiOverTwo = 0.8862269254527580;

// erf(x) = (2/sqrt(pi)) e^(-x^2) sum_{n>=0} x (2x^2)^n / (1*3*...*(2n+1)).
// All terms positive, so no cancellation; used for |x| < 3.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return kTwoOverSqrtPi * std::exp(-x2) * sum;
}

// erfc(x) = e^(-x^2)/sqrt(pi) * 1/(x+ (1/2)/(x+ (2/2)/(x+ (3/2)/(x+ ...))))
// evaluated by modified Lentz; used for x >= 3 where it converges fast.
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    double a = (n == 1) ? 1.0 : (n - 1) * 0.5;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / 1.7724538509055160 * f;  // sqrt(pi)
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  double r;
  if (ax < 3.0) {
    r = erf_series(ax);
  } else {
    r = 1.0 - erfc_cf(ax);
  }
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  const double ax = std::fabs(x);
  if (ax < 3.0) return 1.0 - erf(x);
  const double tail = erfc_cf(ax);
  return x > 0.0 ? tail : 2.0 - tail;
}

double erf_inv(double u) {
  if (!(u > -1.0 && u < 1.0))
    throw std::domain_error("erf_inv: argument must lie in (-1, 1)");
  if (u == 0.0) return 0.0;
  const double au = std::fabs(u);

  // Seed: truncated inverse series for the bulk, a log-based estimate for
  // the tail where the series is useless.
  double x;
  if (au < 0.7) {
    const double s = kSqrtPiOverTwo * au;
    const double s2 = s * s;
    x = s * (1.0 + s2 * (1.0 / 3.0 + s2 * (7.0 / 30.0 + s2 * (127.0 / 630.0))));
  } else {
    // erfc(x) ~ e^(-x^2)/(x sqrt(pi)) gives x ~ sqrt(-log((1-au)*sqrt(pi))).
    double t = -std::log1p(-au);
    x = std::sqrt(t > 1.0 ? t : 1.0);
  }

  // Bracketed Newton. erf is increasing, so keep [lo, hi] around the root;
  // fall back to bisection whenever Newton leaves the bracket.
  double lo = 0.0;
  double hi = 6.5;  // erf(6.5) rounds to 1 in double precision
  for (int it = 0; it < 200; ++it) {
    const double f = erf(x) - au;
    if (f > 0.0) {
      hi = x;
    } else if (f < 0.0) {
      lo = x;
    } else {
      break;
    }
    const double fp = kTwoOverSqrtPi * std::exp(-x * x);
    double next = x - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step < 1e-15 * (1.0 + x) || hi - lo < 1e-15 * (1.0 + x)) break;
  }
  return u < 0.0 ? -x : x;
}

}  // namespace desynclab
