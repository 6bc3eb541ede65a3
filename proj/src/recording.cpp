#include "gazesynth/recording.hpp"

#include <algorithm>

namespace gazesynth {

void validate_samples(const GazeSamples& s, double nominal_rate_hz) {
  if (!(nominal_rate_hz > 0.0) || !std::isfinite(nominal_rate_hz)) {
    throw ValidationError("nominal rate must be > 0 (got " + std::to_string(nominal_rate_hz) + ")");
  }
  const std::size_t n = s.t_ms.size();
  const std::size_t lengths[] = {s.gaze_x.size(), s.gaze_y.size(), s.tgt_x.size(), s.tgt_y.size()};
  for (std::size_t len : lengths) {
    if (len != n) {
      throw ValidationError("length mismatch: timestamps have " + std::to_string(n) +
                            " samples, a channel has " + std::to_string(len));
    }
  }
  if (n < 2) throw ValidationError("recording needs at least 2 samples");

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.t_ms[i])) {
      throw ValidationError("non-finite timestamp at index " + std::to_string(i));
    }
    if (i > 0 && !(s.t_ms[i] > s.t_ms[i - 1])) {
      throw ValidationError("non-monotone at index " + std::to_string(i));
    }
    if (!std::isfinite(s.tgt_x[i]) || !std::isfinite(s.tgt_y[i])) {
      throw ValidationError("non-finite target at index " + std::to_string(i));
    }
    if (std::isinf(s.gaze_x[i]) || std::isinf(s.gaze_y[i])) {
      throw ValidationError("infinite gaze at index " + std::to_string(i));
    }
  }
}

GazeRecording::GazeRecording(std::string recording_id, double nominal_rate_hz, GazeSamples samples)
    : id_(std::move(recording_id)), rate_hz_(nominal_rate_hz), samples_(std::move(samples)) {
  validate_samples(samples_, rate_hz_);
}

std::size_t GazeRecording::missing_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) count += missing(i) ? 1 : 0;
  return count;
}

GazeRecording validate_recording(const GazeRecording& rec) {
  validate_samples(rec.samples(), rec.nominal_rate_hz());
  return rec;
}

void validate_plan(const DegradationPlan& plan, double source_rate_hz) {
  if (!(plan.target_rate_hz > 0.0)) throw ValidationError("target rate must be > 0");
  if (!(plan.target_rate_hz <= source_rate_hz)) {
    throw ValidationError("target rate " + std::to_string(plan.target_rate_hz) +
                          " Hz must not exceed the source rate " + std::to_string(source_rate_hz) + " Hz");
  }
  if (!(plan.sigma0_sq >= 0.0)) throw ValidationError("sigma0_sq must be >= 0");
  if (!(plan.jitter_sigma_ms >= 0.0)) throw ValidationError("jitter sigma must be >= 0");
  if (!(plan.acc_offset_h >= 0.0) || !(plan.acc_offset_v >= 0.0)) {
    throw ValidationError("accuracy offsets must be >= 0");
  }
  if (plan.eccentricity_weighting && !(plan.eccentricity_weighting->sigma_s > 0.0)) {
    throw ValidationError("eccentricity weighting sigma_s must be > 0");
  }
}

void validate_curve(const CalibrationCurve& curve) {
  if (curve.samples.size() < 3) throw ValidationError("calibration curve needs >= 3 points");
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    if (!(curve.samples[i].sigma0_sq > curve.samples[i - 1].sigma0_sq)) {
      throw ValidationError("calibration grid not strictly increasing at index " + std::to_string(i));
    }
  }
  if (!(curve.slope > 0.0)) throw ValidationError("calibration slope must be > 0");
}

}  // namespace gazesynth
