#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazesynth/recording.hpp"

namespace gazesynth {

struct DegradeOptions;

/// Parses "a:b:step" into a, a + step, ... <= b (inclusive within 1e-9).
std::vector<double> parse_grid(std::string_view text);

/// For each grid value, degrades the corpus with the benchmark model and
/// records the corpus-median prec_h; fits a least-squares line through the
/// points. Per-recording seeds depend on (seed, recording id) only, so every
/// grid value sees the same noise stream scaled differently.
CalibrationCurve sweep_sigma(std::span<const GazeRecording> corpus, std::span<const double> sigma0_sq_grid,
                             double target_rate_hz, std::uint64_t seed, const DegradeOptions& options,
                             std::vector<std::string>* warnings = nullptr);

CalibrationCurve sweep_sigma(std::span<const GazeRecording> corpus, std::span<const double> sigma0_sq_grid,
                             double target_rate_hz, std::uint64_t seed);

/// Refits slope and intercept from the stored points.
CalibrationCurve fit_curve(std::vector<CalibrationPoint> points);

double max_fit_residual(const CalibrationCurve& curve);

struct CurveInverse {
  double sigma0_sq = 0.0;
  bool clamped = false;
};

enum class InverseMethod {
  /// (desired - intercept) / slope.
  linear,
  /// Piecewise-linear through the stored sweep points (running maximum, so
  /// a noisy non-increasing step cannot fold the map), extended past the
  /// ends along the first and last segments.
  monotone,
};

InverseMethod parse_inverse_method(std::string_view name);

/// Result clamped to [0, max grid value].
CurveInverse invert_curve(const CalibrationCurve& curve, double desired_mad_h,
                          InverseMethod method = InverseMethod::linear);

}  // namespace gazesynth
