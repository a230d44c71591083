#pragma once

namespace desynclab {

// Error function, absolute error <= 1e-12 everywhere. Power series for
// small arguments, continued fraction for the tail.
double erf(double x);

// Complement 1 - erf(x), accurate in the tail.
double erfc(double x);

// Inverse of erf on (-1, 1): returns x with |erf(x) - u| <= 1e-9.
// Series seed refined by bracketed Newton iteration on erf. Throws
// std::domain_error when |u| >= 1.
double erf_inv(double u);

}  // namespace desynclab
