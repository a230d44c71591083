#pragma once

#include <algorithm>
#include <cmath>

namespace desynclab {

// A point on the unit firing ring. Values always lie in [0, 1).
class Phase {
 public:
  Phase() = default;
  explicit Phase(double value) : value_(wrap(value)) {}

  double value() const { return value_; }

  // Reduce any real to [0, 1). floor-based so negatives wrap correctly.
  static double wrap(double x) {
    double w = x - std::floor(x);
    return w < 1.0 ? w : 0.0;  // floor rounding can leave exactly 1.0
  }

 private:
  double value_ = 0.0;
};

inline Phase phase_add(Phase p, double x) { return Phase(p.value() + x); }

// min(|a-b|, 1-|a-b|), in [0, 0.5].
inline double ring_distance(Phase a, Phase b) {
  double d = std::fabs(a.value() - b.value());
  return std::min(d, 1.0 - d);
}

}  // namespace desynclab
