#pragma once

#include <vector>

namespace desynclab {

double mean(const std::vector<double>& x);

// n-1 denominator; NaN for fewer than two samples.
double sample_std(const std::vector<double>& x);

// NaN when either side has zero variance or sizes mismatch below 2.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Scale s minimizing ||s*model - data||^2.
double least_squares_scale(const std::vector<double>& model,
                           const std::vector<double>& data);

double skewness(const std::vector<double>& x);
double excess_kurtosis(const std::vector<double>& x);

// One-sample Kolmogorov-Smirnov distance against a normal with the
// sample's own mean and std.
double ks_distance_normal_fit(std::vector<double> samples);

// Same against a uniform spanning the sample's min and max.
double ks_distance_uniform_fit(std::vector<double> samples);

}  // namespace desynclab
