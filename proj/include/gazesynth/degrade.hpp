#pragma once

// Synthetic degradation of a high-rate source recording toward a lower
// quality target device.
//
// Benchmark model: additive stationary Gaussian noise, zero-phase
// Butterworth low-pass at 0.8x the target Nyquist, first-order spline
// resampling onto the nominal target grid.
//
// Modified model: per-fixation signed accuracy offsets, per-recording noise
// variance chosen by percentile matching against a target corpus, and
// Gaussian jitter on the target timestamps.
//
// Every stage is a pure function of (recording, plan, seed). A recording is
// degraded with one generator seeded from plan.rng_seed and consumed in a
// fixed order: accuracy magnitudes, accuracy signs, precision noise, jitter.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazesynth/calibrate.hpp"
#include "gazesynth/metrics.hpp"
#include "gazesynth/recording.hpp"

namespace gazesynth {

using Rng = std::mt19937_64;

struct FilterSpec {
  double cutoff_hz = 0.0;
  int order = 2;
  bool zero_phase = true;
};

/// Filters both gaze channels. Missing samples are bridged by linear
/// interpolation for the filter and flagged missing again afterwards.
/// Throws ValidationError when the recording is not longer than the edge
/// padding.
GazeRecording lowpass_zero_phase(const GazeRecording& rec, const FilterSpec& spec);

/// Linear interpolation of gaze and target onto new timestamps. An output
/// sample is missing when any input sample it interpolates from is missing.
/// nominal_rate_hz defaults to the input recording's rate.
GazeRecording resample_spline(const GazeRecording& rec, std::span<const double> new_timestamps_ms,
                              std::optional<double> nominal_rate_hz = std::nullopt);

/// Uniform grid start, start + T, ... covering span_ms, T = 1000 / rate.
/// Requires span_ms > T.
std::vector<double> nominal_target_timestamps(double span_ms, double target_rate_hz, double start_ms = 0.0);

/// Adds an independent Gaussian perturbation to every stamp, std
/// jitter_sigma_ms (or jitter_sigma_ms / sqrt(2) with correction, so the
/// resulting inter-sample interval std equals jitter_sigma_ms). Each
/// perturbation is clamped to +-0.45 T. Rejects jitter_sigma_ms >= 0.45 T.
std::vector<double> jitter_timestamps(std::span<const double> timestamps_ms, double jitter_sigma_ms, Rng& rng,
                                      bool correction);

/// Gaussian weighting of the noise variance by gaze eccentricity.
double eccentricity_alpha(double x, double y, const EccentricityWeighting& weighting);

/// N(0, sigma^2) added to each gaze channel, sigma^2 = sigma0_sq or
/// sigma0_sq * alpha(x, y) with weighting. Two draws are consumed per sample
/// (x then y), missing samples included, so streams stay aligned.
GazeRecording add_precision_noise(const GazeRecording& rec, double sigma0_sq, Rng& rng,
                                  const std::optional<EccentricityWeighting>& weighting = std::nullopt);

enum class NoiseOrder { pre, post };

struct DegradeOptions {
  NoiseOrder noise_order = NoiseOrder::pre;
  int filter_order = 2;
  bool jitter_correction = false;
  MetricsConfig metrics;
};

/// Cutoff used for bandwidth reduction: 0.8 x the target Nyquist frequency.
double anti_alias_cutoff_hz(double target_rate_hz);

/// Benchmark model. Accuracy offsets and jitter in the plan are ignored.
GazeRecording degrade_benchmark(const GazeRecording& rec, const DegradationPlan& plan,
                                const DegradeOptions& options = {});

struct AccuracyStep {
  FixationWindow window;
  double offset_x = 0.0;
  double offset_y = 0.0;
};

/// Piecewise-constant offset signal. Each step holds from its fixation's
/// onset until the next step's onset; zero before the first.
struct AccuracyStepSignal {
  std::vector<AccuracyStep> steps;

  struct Offset {
    double x = 0.0;
    double y = 0.0;
  };
  Offset at(double t_ms) const noexcept;
};

/// Per fixation and channel: magnitude ~ N(m, (0.2 m / 3)^2) with m the
/// plan's offset for that channel, times an independent uniform random sign.
AccuracyStepSignal build_accuracy_signal(const GazeRecording& rec, const DegradationPlan& plan,
                                         const LatencyEstimate& latency, Rng& rng,
                                         const PartitionConfig& partition = {});

GazeRecording apply_accuracy_signal(const GazeRecording& rec, const AccuracyStepSignal& signal);

/// Modified model. Output timestamps are the jittered nominal grid, with
/// any stamp jittered outside the source time span dropped.
GazeRecording degrade_modified(const GazeRecording& rec, const DegradationPlan& plan,
                               const DegradeOptions& options = {});

struct PlanDiagnostics {
  double source_rank = 0.0;
  double target_prec_c = 0.0;
  double marginal_prec_c = 0.0;
  double marginal_prec_h = 0.0;
  bool sigma_clamped = false;
  std::vector<std::string> warnings;
};

enum class JitterMatching {
  /// Every file gets the target corpus median temporal precision.
  median,
  /// Rank of the file's own temporal precision in the source corpus, ties
  /// spread uniformly by a seeded draw, mapped onto the target quantile.
  percentile,
};

enum class AccuracyMatching {
  /// offset = target quantile - source value.
  difference,
  /// offset m such that a zero-mean Gaussian per-fixation error with the
  /// source's mean magnitude, shifted by a random-sign m, has mean
  /// magnitude equal to the target quantile.
  folded,
};

JitterMatching parse_jitter_matching(std::string_view name);
AccuracyMatching parse_accuracy_matching(std::string_view name);

struct PlanOptions {
  InverseMethod inverse = InverseMethod::monotone;
  JitterMatching jitter = JitterMatching::percentile;
  AccuracyMatching accuracy = AccuracyMatching::difference;
};

/// Percentile-matched plan for one source file.
///
/// The file's prec_c rank within the source corpus selects the target prec_c
/// at the same rank in the target corpus. The marginal dispersion still
/// needed, sqrt(target^2 - post_pipeline^2), is split evenly across the two
/// channels (isotropic noise) and mapped to sigma0_sq through the inverse
/// calibration curve. Accuracy offsets are matched per channel the same way
/// and clamped at zero. Jitter follows options.jitter.
DegradationPlan plan_modified(const QualityVector& source_qv, double source_post_pipeline_prec_c,
                              std::span<const QualityVector> source_corpus,
                              std::span<const QualityVector> target_corpus, const CalibrationCurve& calib,
                              double target_rate_hz, std::uint64_t rng_seed, PlanDiagnostics* diagnostics = nullptr,
                              const PlanOptions& options = {});

}  // namespace gazesynth
