#include "desynclab/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace desynclab {

int kernel_period(int w) { return std::max(w, 5); }

CouplingKernel::CouplingKernel(double alpha, int w)
    : taps{0.5 * alpha, 1.0 - alpha, 0.5 * alpha}, period(kernel_period(w)) {}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b,
                                      int period) {
  if (period < static_cast<int>(a.size()) ||
      period < static_cast<int>(b.size()))
    throw std::invalid_argument(
        "circular_convolve: period shorter than an input vector");
  std::vector<double> out(period, 0.0);
  for (int m = 0; m < static_cast<int>(a.size()); ++m) {
    if (a[m] == 0.0) continue;
    for (int n = 0; n < static_cast<int>(b.size()); ++n) {
      out[(m + n) % period] += a[m] * b[n];
    }
  }
  return out;
}

KernelPowerSequence::KernelPowerSequence(double alpha, int w)
    : alpha_(alpha), period_(kernel_period(w)) {
  // v laid out on the ring with the own tap at offset 0.
  current_.assign(period_, 0.0);
  current_[0] = 1.0 - alpha_;
  current_[1] = 0.5 * alpha_;
  current_[period_ - 1] = 0.5 * alpha_;
  double n1 = 0.0;
  for (double t : current_) n1 += t * t;
  norms_.push_back(n1);
  cumulative_.push_back(n1);
}

void KernelPowerSequence::extend(long j) {
  while (static_cast<long>(norms_.size()) < j) {
    // One more convolution with the 3-tap kernel, in place on the ring.
    std::vector<double> next(period_);
    const double c = 1.0 - alpha_;
    const double s = 0.5 * alpha_;
    for (int n = 0; n < period_; ++n) {
      const int left = (n + 1) % period_;
      const int right = (n - 1 + period_) % period_;
      next[n] = c * current_[n] + s * (current_[left] + current_[right]);
    }
    current_.swap(next);
    double nsq = 0.0;
    for (double t : current_) nsq += t * t;
    norms_.push_back(nsq);
    cumulative_.push_back(cumulative_.back() + nsq);
  }
}

double KernelPowerSequence::norm_sq(long j) {
  if (j < 1) throw std::invalid_argument("norm_sq: index starts at 1");
  extend(j);
  return norms_[j - 1];
}

double KernelPowerSequence::cumulative_norm_sq(long j) {
  if (j < 1) throw std::invalid_argument("cumulative_norm_sq: index starts at 1");
  extend(j);
  return cumulative_[j - 1];
}

std::vector<double> kernel_power_norms(double alpha, int w, int k_max) {
  if (k_max < 1) throw std::invalid_argument("kernel_power_norms: k_max >= 1");
  KernelPowerSequence seq(alpha, w);
  std::vector<double> out(k_max);
  for (int j = 1; j <= k_max; ++j) out[j - 1] = seq.norm_sq(j);
  return out;
}

}  // namespace desynclab
