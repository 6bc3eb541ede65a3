#include "gazesynth/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gazesynth::stats {

namespace {

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

void require_non_empty(std::span<const double> values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty sample");
}

}  // namespace

double mean(std::span<const double> values) {
  require_non_empty(values, "mean");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

double median(std::span<const double> values) {
  require_non_empty(values, "median");
  return quantile_sorted(sorted_copy(values), 0.5);
}

double median_absolute_deviation(std::span<const double> values) {
  const double m = median(values);
  std::vector<double> dev;
  dev.reserve(values.size());
  for (double v : values) dev.push_back(std::fabs(v - m));
  return median(dev);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  require_non_empty(sorted, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::span<const double> sample, double p) {
  require_non_empty(sample, "quantile");
  return quantile_sorted(sorted_copy(sample), p);
}

double percentile_rank(double value, std::span<const double> sample) {
  require_non_empty(sample, "percentile_rank");
  const std::vector<double> s = sorted_copy(sample);
  if (value < s.front()) return 0.0;
  if (value > s.back()) return 1.0;
  if (s.size() == 1) return 0.5;
  if (value == s.back()) {
    // First occurrence of the maximum.
    const auto first = std::lower_bound(s.begin(), s.end(), value) - s.begin();
    return static_cast<double>(first) / static_cast<double>(s.size() - 1);
  }
  // s[j] <= value < s[j + 1] with s[j] < s[j + 1].
  const auto j = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), value) - s.begin()) - 1;
  const double frac = (value - s[j]) / (s[j + 1] - s[j]);
  return (static_cast<double>(j) + frac) / static_cast<double>(s.size() - 1);
}

double percentile_rank_tied(double value, std::span<const double> sample, double u) {
  require_non_empty(sample, "percentile_rank_tied");
  const std::vector<double> s = sorted_copy(sample);
  const auto lo = std::lower_bound(s.begin(), s.end(), value) - s.begin();
  const auto hi = std::upper_bound(s.begin(), s.end(), value) - s.begin();
  if (hi - lo < 2 || s.size() < 2) return percentile_rank(value, sample);
  const double first = static_cast<double>(lo);
  const double last = static_cast<double>(hi - 1);
  return (first + std::clamp(u, 0.0, 1.0) * (last - first)) / static_cast<double>(s.size() - 1);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("least_squares: need >= 2 paired points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: x has zero variance");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::fabs(y[i] - (fit.intercept + fit.slope * x[i])));
  }
  return fit;
}

}  // namespace gazesynth::stats
