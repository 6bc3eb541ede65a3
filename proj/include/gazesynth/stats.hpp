#pragma once

// Order statistics and small estimators used across the library.
//
// Quantile convention: linear interpolation between closest ranks, the
// "(n-1)p" rule. percentile_rank is its inverse on the sample's support.

#include <span>
#include <vector>

namespace gazesynth::stats {

inline constexpr const char* kQuantileConvention = "linear interpolation, (n-1)p rule";

double mean(std::span<const double> values);

/// Population standard deviation (divides by n).
double population_std(std::span<const double> values);

double median(std::span<const double> values);

/// median |v - median(v)|, unscaled.
double median_absolute_deviation(std::span<const double> values);

/// Throws std::invalid_argument for an empty sample or p outside [0, 1].
double quantile(std::span<const double> sample, double p);

/// Same as quantile() but for input already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double p);

/// Rank of value within sample in [0, 1]; 0 below the minimum, 1 above the
/// maximum, linear between order statistics.
double percentile_rank(double value, std::span<const double> sample);

/// Like percentile_rank, but a value tied with several sample entries gets
/// the rank at fraction u in [0, 1] across the tied block instead of one
/// end of it. With u uniform, a constant sample maps onto uniform ranks.
double percentile_rank_tied(double value, std::span<const double> sample, double u);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace gazesynth::stats
