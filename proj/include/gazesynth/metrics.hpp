#pragma once

// Signal-quality metrics for random-saccade recordings.
//
// Pipeline: per-file saccade latency by grid search, fixed partitioning of
// each target dwell (discard, then keep), distance-to-centroid outlier
// rejection, then per-fixation accuracy (mean absolute gaze-target offset)
// and precision (median absolute deviation about the median). Per-recording
// accuracy is the mean over fixations; per-recording precision takes the
// median of per-fixation prec_h and prec_v and recombines them, so
// prec_c^2 == prec_h^2 + prec_v^2 holds at both levels.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazesynth/recording.hpp"

namespace gazesynth {

struct LatencyEstimate {
  double shift_ms = 0.0;
  /// Mean Euclidean gaze-target distance at the chosen shift (dva).
  double distance_at_shift = 0.0;
  std::size_t shift_samples = 0;
};

struct LatencySearch {
  double min_ms = 0.0;
  double max_ms = 400.0;
  /// Defaults to one nominal sample period.
  std::optional<double> step_ms;
};

/// Shift (in whole nominal samples) of the gaze signal that minimises the
/// mean Euclidean distance to the target over the overlapping region.
/// Missing samples are excluded; ties resolve to the smallest shift.
LatencyEstimate estimate_latency(const GazeRecording& rec, const LatencySearch& search = {});

struct PartitionConfig {
  double discard_ms = 400.0;
  double keep_ms = 500.0;
};

/// One window per target dwell long enough to hold discard_ms + keep_ms.
/// The window covers stimulus time [onset + discard, onset + discard + keep)
/// read from gaze at +latency. The first dwell starts at the first sample.
std::vector<FixationWindow> extract_fixations(const GazeRecording& rec, const LatencyEstimate& latency,
                                              const PartitionConfig& config = {});

/// Marks samples whose distance to the window's per-channel median lies
/// outside Tukey's fences or exceeds max_dist_dva. Missing samples are
/// always masked. Throws ComputationError with fewer than 4 usable samples.
FixationWindow reject_outliers(FixationWindow window, const GazeRecording& rec, double max_dist_dva = 2.0);

struct AxisTriple {
  double h = 0.0;
  double v = 0.0;
  double c = 0.0;
};

AxisTriple fixation_accuracy(const FixationWindow& window, const GazeRecording& rec);
AxisTriple fixation_precision(const FixationWindow& window, const GazeRecording& rec);

/// Population std of consecutive timestamp differences. Needs >= 3 stamps.
double temporal_precision(std::span<const double> timestamps_ms);
double temporal_precision(const GazeRecording& rec);

struct MetricsConfig {
  LatencySearch latency;
  PartitionConfig partition;
  double max_dist_dva = 2.0;
};

struct QualityReport {
  QualityVector quality;
  LatencyEstimate latency;
  std::vector<FixationWindow> fixations;
  std::vector<AxisTriple> accuracy;
  std::vector<AxisTriple> precision;
  std::vector<std::string> warnings;
};

/// Full pipeline with per-fixation detail. Throws ComputationError when no
/// fixation survives.
QualityReport recording_quality_report(const GazeRecording& rec, const MetricsConfig& config = {});

QualityVector recording_quality(const GazeRecording& rec, const MetricsConfig& config = {});

}  // namespace gazesynth
