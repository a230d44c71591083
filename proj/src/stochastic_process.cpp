#include "desynclab/stochastic_process.hpp"

#include <random>
#include <stdexcept>

#include "desynclab/rng.hpp"
#include "desynclab/stats.hpp"

namespace desynclab {

std::vector<double> update_process_samples(const SimConfig& config,
                                           int update_index, long n_samples) {
  if (update_index < 0)
    throw std::invalid_argument("update_index must be >= 0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const ProtocolParams& p = config.params;
  p.validate();
  const int w = p.w;
  const double a = p.alpha;

  std::vector<double> out;
  out.reserve(n_samples);
  std::vector<double> y(w), delta(w), next(w);

  for (long trial = 0; trial < n_samples; ++trial) {
    std::mt19937_64 rng =
        make_rng(config.seed + static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    UniformNoise noise(p.normalized_sigma_delta());

    if (config.protocol == Protocol::kDesync) {
      for (int i = 0; i < w; ++i) y[i] = unit(rng) - 0.5;
      for (int r = 0; r < update_index; ++r) {
        // One noise draw per speaker per round, shared by every listener
        // of that speaker.
        for (int i = 0; i < w; ++i) delta[i] = noise(rng);
        for (int i = 0; i < w; ++i) {
          const int l = (i - 1 + w) % w;
          const int rr = (i + 1) % w;
          next[i] = (1.0 - a) * (y[i] + delta[i]) +
                    0.5 * a * (y[l] + delta[l] + y[rr] + delta[rr]);
        }
        y.swap(next);
      }
      out.push_back(y[0]);
    } else {
      double v = unit(rng) - 0.5;
      for (int r = 0; r < update_index; ++r)
        v = (1.0 - a) * (v + noise(rng));
      out.push_back(v);
    }
  }
  return out;
}

DiagnosticReport normality_diagnostic(const SimConfig& config,
                                      int update_index, long n_samples) {
  DiagnosticReport rep;
  rep.update_index = update_index;
  rep.n_samples = n_samples;
  std::vector<double> samples =
      update_process_samples(config, update_index, n_samples);
  rep.mean = mean(samples);
  rep.stddev = sample_std(samples);
  rep.skewness = skewness(samples);
  rep.excess_kurtosis = excess_kurtosis(samples);
  rep.ks_normal = ks_distance_normal_fit(samples);
  rep.ks_uniform = ks_distance_uniform_fit(samples);
  return rep;
}

}  // namespace desynclab
