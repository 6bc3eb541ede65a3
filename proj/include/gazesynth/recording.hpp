#pragma once

// Core domain types shared by every stage of the pipeline.
//
// Units are fixed throughout the library: positions in degrees of visual
// angle (dva), times in milliseconds, rates in Hz.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gazesynth {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation cannot produce a result from otherwise valid
/// input, for example a recording with no usable fixations.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column storage for a recording. A gaze sample is missing when either
/// coordinate is NaN; target channels and timestamps are always finite.
struct GazeSamples {
  std::vector<double> t_ms;
  std::vector<double> gaze_x;
  std::vector<double> gaze_y;
  std::vector<double> tgt_x;
  std::vector<double> tgt_y;
};

/// Throws ValidationError naming the first offending index.
void validate_samples(const GazeSamples& samples, double nominal_rate_hz);

/// Timestamped gaze and target trace. Immutable once constructed; the
/// constructor enforces every invariant.
class GazeRecording {
 public:
  GazeRecording(std::string recording_id, double nominal_rate_hz, GazeSamples samples);

  const std::string& id() const noexcept { return id_; }
  double nominal_rate_hz() const noexcept { return rate_hz_; }
  double nominal_period_ms() const noexcept { return 1000.0 / rate_hz_; }
  std::size_t size() const noexcept { return samples_.t_ms.size(); }

  const GazeSamples& samples() const noexcept { return samples_; }
  const std::vector<double>& t_ms() const noexcept { return samples_.t_ms; }
  const std::vector<double>& gaze_x() const noexcept { return samples_.gaze_x; }
  const std::vector<double>& gaze_y() const noexcept { return samples_.gaze_y; }
  const std::vector<double>& tgt_x() const noexcept { return samples_.tgt_x; }
  const std::vector<double>& tgt_y() const noexcept { return samples_.tgt_y; }

  bool missing(std::size_t i) const noexcept {
    return std::isnan(samples_.gaze_x[i]) || std::isnan(samples_.gaze_y[i]);
  }
  std::size_t missing_count() const noexcept;

 private:
  std::string id_;
  double rate_hz_;
  GazeSamples samples_;
};

/// Re-checks every invariant and returns an identical copy.
GazeRecording validate_recording(const GazeRecording& rec);

/// One candidate fixation. Sample indices address gaze samples of the
/// recording the window was extracted from; [sample_start, sample_end).
struct FixationWindow {
  std::string recording_id;
  std::size_t sample_start = 0;
  std::size_t sample_end = 0;
  double tgt_x = 0.0;
  double tgt_y = 0.0;
  /// Latency-adjusted start of the dwell this window belongs to.
  double onset_ms = 0.0;
  /// One flag per sample in the window; true means excluded.
  std::vector<std::uint8_t> outlier_mask;

  std::size_t length() const noexcept { return sample_end - sample_start; }
};

struct QualityVector {
  double acc_h = 0.0;
  double acc_v = 0.0;
  double acc_c = 0.0;
  double prec_h = 0.0;
  double prec_v = 0.0;
  double prec_c = 0.0;
  double temporal_prec_ms = 0.0;
  std::size_t n_fixations_used = 0;
};

struct EccentricityWeighting {
  double sigma_s = 0.0;
  double r_max = 0.0;
};

struct DegradationPlan {
  double target_rate_hz = 0.0;
  double sigma0_sq = 0.0;
  double acc_offset_h = 0.0;
  double acc_offset_v = 0.0;
  double jitter_sigma_ms = 0.0;
  std::uint64_t rng_seed = 0;
  std::optional<EccentricityWeighting> eccentricity_weighting;
};

/// Throws ValidationError if the plan cannot be applied to a source
/// recording sampled at source_rate_hz.
void validate_plan(const DegradationPlan& plan, double source_rate_hz);

struct CalibrationPoint {
  double sigma0_sq = 0.0;
  double mad_h = 0.0;
};

struct CalibrationCurve {
  std::vector<CalibrationPoint> samples;
  double slope = 0.0;
  double intercept = 0.0;

  double evaluate(double sigma0_sq) const noexcept { return intercept + slope * sigma0_sq; }
  double max_sigma0_sq() const { return samples.empty() ? 0.0 : samples.back().sigma0_sq; }
};

void validate_curve(const CalibrationCurve& curve);

}  // namespace gazesynth
