#pragma once

#include <vector>

namespace desynclab {

// Circular-convolution period used by the closed forms: the ring size w,
// lifted to 5 for smaller rings so short kernels cannot overlap themselves.
int kernel_period(int w);

// Averaging weights a node applies to (previous, own, next) firing phases.
struct CouplingKernel {
  CouplingKernel(double alpha, int w);

  double taps[3];  // alpha/2, 1 - alpha, alpha/2; sums to 1
  int period;
};

// Entry n of the period-length circular convolution of a with b, inputs
// zero-padded to the period. Throws std::invalid_argument when the period
// is shorter than either input.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b,
                                      int period);

// Lazily extended sequence of j-fold self-convolutions of the coupling
// kernel; serves the squared norms and their running sums.
class KernelPowerSequence {
 public:
  KernelPowerSequence(double alpha, int w);

  // ||v^(j)||^2 for the j-fold self-convolution, j >= 1.
  double norm_sq(long j);
  // sum_{i=1..j} ||v^(i)||^2.
  double cumulative_norm_sq(long j);
  int period() const { return period_; }

 private:
  void extend(long j);

  double alpha_;
  int period_;
  std::vector<double> current_;  // v^(j) for the last computed j
  std::vector<double> norms_;    // norms_[j-1] = ||v^(j)||^2
  std::vector<double> cumulative_;
};

// ||v^(j)||^2 for j = 1..k_max.
std::vector<double> kernel_power_norms(double alpha, int w, int k_max);

}  // namespace desynclab
