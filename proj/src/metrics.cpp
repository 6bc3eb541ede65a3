#include "gazesynth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gazesynth/stats.hpp"

namespace gazesynth {

LatencyEstimate estimate_latency(const GazeRecording& rec, const LatencySearch& search) {
  if (!(search.min_ms >= 0.0) || !(search.max_ms <= 500.0) || !(search.min_ms <= search.max_ms)) {
    throw std::invalid_argument("latency search range must lie within [0, 500] ms and be non-empty");
  }
  const double period = rec.nominal_period_ms();
  const double step_ms = search.step_ms.value_or(period);
  if (!(step_ms > 0.0)) throw std::invalid_argument("latency step must be > 0");
  const auto step = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(step_ms / period)));
  const auto first = static_cast<std::size_t>(std::ceil(search.min_ms / period - 1e-9));
  const auto last = static_cast<std::size_t>(std::floor(search.max_ms / period + 1e-9));
  if (first > last) throw std::invalid_argument("latency search range is empty at this sample rate");

  const auto& gx = rec.gaze_x();
  const auto& gy = rec.gaze_y();
  const auto& tx = rec.tgt_x();
  const auto& ty = rec.tgt_y();
  const std::size_t n = rec.size();

  LatencyEstimate best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = first; k <= last && k < n; k += step) {
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i + k < n; ++i) {
      if (rec.missing(i + k)) continue;
      const double dx = gx[i + k] - tx[i];
      const double dy = gy[i + k] - ty[i];
      sum += std::sqrt(dx * dx + dy * dy);
      ++used;
    }
    if (used == 0) continue;
    const double d = sum / static_cast<double>(used);
    if (d < best_distance) {
      best_distance = d;
      best.shift_samples = k;
      best.shift_ms = static_cast<double>(k) * period;
      best.distance_at_shift = d;
    }
  }
  if (!std::isfinite(best_distance)) throw ComputationError("latency: all samples missing");
  return best;
}

std::vector<FixationWindow> extract_fixations(const GazeRecording& rec, const LatencyEstimate& latency,
                                              const PartitionConfig& config) {
  const auto& t = rec.t_ms();
  const auto& tx = rec.tgt_x();
  const auto& ty = rec.tgt_y();
  const std::size_t n = rec.size();

  std::vector<std::size_t> segment_starts{0};
  for (std::size_t i = 1; i < n; ++i) {
    if (tx[i] != tx[i - 1] || ty[i] != ty[i - 1]) segment_starts.push_back(i);
  }
  if (segment_starts.size() < 2) throw ComputationError("no target transitions found in " + rec.id());

  const double period = rec.nominal_period_ms();
  const double recording_end = t.back() + period;
  const double required = config.discard_ms + config.keep_ms;

  std::vector<FixationWindow> windows;
  for (std::size_t s = 0; s < segment_starts.size(); ++s) {
    const std::size_t begin = segment_starts[s];
    const double onset = t[begin];
    const double dwell_end = s + 1 < segment_starts.size() ? t[segment_starts[s + 1]] : recording_end;
    // Small tolerance so a dwell of exactly `required` ms qualifies on a
    // floating-point grid.
    if (dwell_end - onset + 1e-9 < required) continue;

    const double win_start = onset + latency.shift_ms + config.discard_ms;
    const double win_end = win_start + config.keep_ms;
    if (win_end > recording_end + 1e-9) continue;

    const auto lo = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), win_start - 1e-9) - t.begin());
    const auto hi = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), win_end - 1e-9) - t.begin());
    if (hi <= lo) continue;

    FixationWindow w;
    w.recording_id = rec.id();
    w.sample_start = lo;
    w.sample_end = hi;
    w.tgt_x = tx[begin];
    w.tgt_y = ty[begin];
    w.onset_ms = onset + latency.shift_ms;
    w.outlier_mask.assign(hi - lo, 0);
    windows.push_back(std::move(w));
  }
  return windows;
}

FixationWindow reject_outliers(FixationWindow window, const GazeRecording& rec, double max_dist_dva) {
  const auto& gx = rec.gaze_x();
  const auto& gy = rec.gaze_y();
  const std::size_t len = window.length();
  window.outlier_mask.assign(len, 0);

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t i = window.sample_start + k;
    if (rec.missing(i)) {
      window.outlier_mask[k] = 1;
      continue;
    }
    xs.push_back(gx[i]);
    ys.push_back(gy[i]);
  }
  if (xs.size() < 4) {
    throw ComputationError("fixation at sample " + std::to_string(window.sample_start) + " has only " +
                           std::to_string(xs.size()) + " usable samples");
  }

  const double cx = stats::median(xs);
  const double cy = stats::median(ys);
  std::vector<double> dist(len, 0.0);
  std::vector<double> usable;
  usable.reserve(xs.size());
  for (std::size_t k = 0; k < len; ++k) {
    if (window.outlier_mask[k]) continue;
    const std::size_t i = window.sample_start + k;
    dist[k] = std::hypot(gx[i] - cx, gy[i] - cy);
    usable.push_back(dist[k]);
  }
  std::sort(usable.begin(), usable.end());
  const double q1 = stats::quantile_sorted(usable, 0.25);
  const double q3 = stats::quantile_sorted(usable, 0.75);
  const double iqr = q3 - q1;
  const double upper = q3 + 1.5 * iqr;
  const double lower = q1 - 1.5 * iqr;

  for (std::size_t k = 0; k < len; ++k) {
    if (window.outlier_mask[k]) continue;
    if (dist[k] > upper || dist[k] < lower || dist[k] > max_dist_dva) window.outlier_mask[k] = 1;
  }
  return window;
}

namespace {

// Unmasked, non-missing sample indices. An unset mask means no outlier pass
// has run yet; missing samples are still excluded.
std::vector<std::size_t> usable_samples(const FixationWindow& window, const GazeRecording& rec) {
  const bool has_mask = window.outlier_mask.size() == window.length();
  if (!has_mask && !window.outlier_mask.empty()) {
    throw std::invalid_argument("outlier mask size does not match the window");
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < window.length(); ++k) {
    const std::size_t i = window.sample_start + k;
    if (i >= rec.size()) throw std::out_of_range("fixation window exceeds recording");
    if ((has_mask && window.outlier_mask[k]) || rec.missing(i)) continue;
    idx.push_back(i);
  }
  if (idx.empty()) throw ComputationError("fixation has zero unmasked samples");
  return idx;
}

}  // namespace

AxisTriple fixation_accuracy(const FixationWindow& window, const GazeRecording& rec) {
  const auto idx = usable_samples(window, rec);
  const auto& gx = rec.gaze_x();
  const auto& gy = rec.gaze_y();
  double sh = 0.0;
  double sv = 0.0;
  double sc = 0.0;
  for (std::size_t i : idx) {
    const double dx = gx[i] - window.tgt_x;
    const double dy = gy[i] - window.tgt_y;
    sh += std::fabs(dx);
    sv += std::fabs(dy);
    sc += std::sqrt(dx * dx + dy * dy);
  }
  const auto m = static_cast<double>(idx.size());
  return {sh / m, sv / m, sc / m};
}

AxisTriple fixation_precision(const FixationWindow& window, const GazeRecording& rec) {
  const auto idx = usable_samples(window, rec);
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(idx.size());
  ys.reserve(idx.size());
  for (std::size_t i : idx) {
    xs.push_back(rec.gaze_x()[i]);
    ys.push_back(rec.gaze_y()[i]);
  }
  const double h = stats::median_absolute_deviation(xs);
  const double v = stats::median_absolute_deviation(ys);
  return {h, v, std::sqrt(h * h + v * v)};
}

double temporal_precision(std::span<const double> timestamps_ms) {
  if (timestamps_ms.size() < 3) throw std::invalid_argument("temporal precision needs >= 3 timestamps");
  std::vector<double> isi(timestamps_ms.size() - 1);
  for (std::size_t i = 1; i < timestamps_ms.size(); ++i) isi[i - 1] = timestamps_ms[i] - timestamps_ms[i - 1];
  return stats::population_std(isi);
}

double temporal_precision(const GazeRecording& rec) { return temporal_precision(rec.t_ms()); }

QualityReport recording_quality_report(const GazeRecording& rec, const MetricsConfig& config) {
  QualityReport report;
  report.latency = estimate_latency(rec, config.latency);
  const auto candidates = extract_fixations(rec, report.latency, config.partition);

  for (const auto& candidate : candidates) {
    try {
      FixationWindow w = reject_outliers(candidate, rec, config.max_dist_dva);
      AxisTriple acc = fixation_accuracy(w, rec);
      AxisTriple prec = fixation_precision(w, rec);
      report.fixations.push_back(std::move(w));
      report.accuracy.push_back(acc);
      report.precision.push_back(prec);
    } catch (const ComputationError& e) {
      report.warnings.push_back(rec.id() + ": dropped fixation: " + e.what());
    }
  }
  if (report.fixations.empty()) throw ComputationError(rec.id() + ": zero usable fixations");

  std::vector<double> ah, av, ac, ph, pv;
  for (std::size_t k = 0; k < report.fixations.size(); ++k) {
    ah.push_back(report.accuracy[k].h);
    av.push_back(report.accuracy[k].v);
    ac.push_back(report.accuracy[k].c);
    ph.push_back(report.precision[k].h);
    pv.push_back(report.precision[k].v);
  }
  QualityVector& q = report.quality;
  q.acc_h = stats::mean(ah);
  q.acc_v = stats::mean(av);
  q.acc_c = stats::mean(ac);
  q.prec_h = stats::median(ph);
  q.prec_v = stats::median(pv);
  q.prec_c = std::sqrt(q.prec_h * q.prec_h + q.prec_v * q.prec_v);
  q.temporal_prec_ms = temporal_precision(rec);
  q.n_fixations_used = report.fixations.size();
  return report;
}

QualityVector recording_quality(const GazeRecording& rec, const MetricsConfig& config) {
  return recording_quality_report(rec, config).quality;
}

}  // namespace gazesynth
