#pragma once

#include <cstdint>
#include <random>

namespace desynclab {

// 64-bit finalizer; decorrelates adjacent trial seeds before they reach the
// generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

// Zero-mean uniform noise with standard deviation sigma; the support is
// [-sigma*sqrt(3), +sigma*sqrt(3)].
class UniformNoise {
 public:
  explicit UniformNoise(double sigma) : half_width_(sigma * kSqrt3) {}

  template <class Gen>
  double operator()(Gen& g) {
    // Always consumes one variate so the draw sequence is independent of
    // sigma.
    return half_width_ * (2.0 * unit_(g) - 1.0);
  }

  double half_width() const { return half_width_; }

 private:
  static constexpr double kSqrt3 = 1.7320508075688772;
  double half_width_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace desynclab
