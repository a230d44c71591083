#include "desynclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "desynclab/special_functions.hpp"

namespace desynclab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double central_moment(const std::vector<double>& x, double m, int order) {
  double acc = 0.0;
  for (double v : x) acc += std::pow(v - m, order);
  return acc / static_cast<double>(x.size());
}

std::vector<double> average_ranks(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * (i + j) + 1.0;  // average of 1-based positions
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double ks_statistic(const std::vector<double>& sorted,
                    const std::vector<double>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const double hi = (i + 1.0) / n - cdf[i];
    const double lo = cdf[i] - i / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace

double mean(const std::vector<double>& x) {
  if (x.empty()) return kNaN;
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double sample_std(const std::vector<double>& x) {
  if (x.size() < 2) return kNaN;
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("pearson: size mismatch");
  if (x.size() < 2) return kNaN;
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("spearman: size mismatch");
  return pearson(average_ranks(x), average_ranks(y));
}

double least_squares_scale(const std::vector<double>& model,
                           const std::vector<double>& data) {
  if (model.size() != data.size())
    throw std::invalid_argument("least_squares_scale: size mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < model.size(); ++i) {
    num += model[i] * data[i];
    den += model[i] * model[i];
  }
  if (den == 0.0) return kNaN;
  return num / den;
}

double skewness(const std::vector<double>& x) {
  if (x.size() < 2) return kNaN;
  const double m = mean(x);
  const double m2 = central_moment(x, m, 2);
  if (m2 == 0.0) return kNaN;
  return central_moment(x, m, 3) / std::pow(m2, 1.5);
}

double excess_kurtosis(const std::vector<double>& x) {
  if (x.size() < 2) return kNaN;
  const double m = mean(x);
  const double m2 = central_moment(x, m, 2);
  if (m2 == 0.0) return kNaN;
  return central_moment(x, m, 4) / (m2 * m2) - 3.0;
}

double ks_distance_normal_fit(std::vector<double> samples) {
  if (samples.size() < 2) return kNaN;
  const double m = mean(samples);
  const double s = sample_std(samples);
  if (!(s > 0.0)) return kNaN;
  std::sort(samples.begin(), samples.end());
  std::vector<double> cdf(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    const double z = (samples[i] - m) / s;
    cdf[i] = 0.5 * erfc(-z / 1.4142135623730951);
  }
  return ks_statistic(samples, cdf);
}

double ks_distance_uniform_fit(std::vector<double> samples) {
  if (samples.size() < 2) return kNaN;
  std::sort(samples.begin(), samples.end());
  const double lo = samples.front();
  const double hi = samples.back();
  if (!(hi > lo)) return kNaN;
  std::vector<double> cdf(samples.size());
  for (size_t i = 0; i < samples.size(); ++i)
    cdf[i] = (samples[i] - lo) / (hi - lo);
  return ks_statistic(samples, cdf);
}

}  // namespace desynclab
