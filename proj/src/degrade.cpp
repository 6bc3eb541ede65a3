#include "gazesynth/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gazesynth/calibrate.hpp"
#include "gazesynth/filter.hpp"
#include "gazesynth/seeding.hpp"
#include "gazesynth/stats.hpp"

namespace gazesynth {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Linear bridge across missing samples; leading/trailing gaps hold the
// nearest valid value. Returns false if every sample is missing.
bool bridge_missing(std::vector<double>& v, const std::vector<std::uint8_t>& missing) {
  const std::size_t n = v.size();
  std::size_t prev = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (missing[i]) continue;
    if (prev == n) {
      for (std::size_t j = 0; j < i; ++j) v[j] = v[i];
    } else if (i > prev + 1) {
      const double span = static_cast<double>(i - prev);
      for (std::size_t j = prev + 1; j < i; ++j) {
        v[j] = v[prev] + (v[i] - v[prev]) * static_cast<double>(j - prev) / span;
      }
    }
    prev = i;
  }
  if (prev == n) return false;
  for (std::size_t j = prev + 1; j < n; ++j) v[j] = v[prev];
  return true;
}

std::vector<double> standard_normals(Rng& rng, std::size_t count) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(count);
  for (double& v : z) v = normal(rng);
  return z;
}

// Drops stamps outside [lo, hi]; jitter can push the first or last stamp
// past the source span.
std::vector<double> clip_to_span(std::vector<double> stamps, double lo, double hi) {
  std::erase_if(stamps, [&](double t) { return t < lo || t > hi; });
  return stamps;
}

}  // namespace

GazeRecording lowpass_zero_phase(const GazeRecording& rec, const FilterSpec& spec) {
  if (!spec.zero_phase) throw std::invalid_argument("only zero-phase filtering is supported");
  const double fs = rec.nominal_rate_hz();
  const auto sections = dsp::butterworth_lowpass(spec.order, spec.cutoff_hz, fs);
  const std::size_t pad = dsp::edge_pad_length(spec.cutoff_hz, fs);
  if (rec.size() <= pad) {
    throw ValidationError("recording " + rec.id() + " has " + std::to_string(rec.size()) +
                          " samples, not longer than the filter edge padding of " + std::to_string(pad));
  }

  GazeSamples out = rec.samples();
  std::vector<std::uint8_t> missing(rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) missing[i] = rec.missing(i) ? 1 : 0;

  for (auto* channel : {&out.gaze_x, &out.gaze_y}) {
    std::vector<double> v = *channel;
    if (!bridge_missing(v, missing)) continue;  // all missing: nothing to filter
    v = dsp::filtfilt(sections, v, pad);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (missing[i]) v[i] = (*channel)[i];  // keep the original missing marker
    }
    *channel = std::move(v);
  }
  // A sample missing in one channel stays missing; the other channel keeps
  // its filtered value.
  return GazeRecording(rec.id(), fs, std::move(out));
}

GazeRecording resample_spline(const GazeRecording& rec, std::span<const double> new_ts,
                              std::optional<double> nominal_rate_hz) {
  const auto& t = rec.t_ms();
  const auto& src = rec.samples();
  GazeSamples out;
  out.t_ms.assign(new_ts.begin(), new_ts.end());
  out.gaze_x.resize(new_ts.size());
  out.gaze_y.resize(new_ts.size());
  out.tgt_x.resize(new_ts.size());
  out.tgt_y.resize(new_ts.size());

  for (std::size_t k = 0; k < new_ts.size(); ++k) {
    const double tk = new_ts[k];
    if (tk < t.front() || tk > t.back()) {
      throw std::out_of_range("resample timestamp " + std::to_string(tk) + " outside source span [" +
                              std::to_string(t.front()) + ", " + std::to_string(t.back()) + "]");
    }
    // j: last source index with t[j] <= tk.
    const auto j = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tk) - t.begin()) - 1;
    if (t[j] == tk || j + 1 == t.size()) {
      out.gaze_x[k] = src.gaze_x[j];
      out.gaze_y[k] = src.gaze_y[j];
      out.tgt_x[k] = src.tgt_x[j];
      out.tgt_y[k] = src.tgt_y[j];
      continue;
    }
    const double w = (tk - t[j]) / (t[j + 1] - t[j]);
    auto lerp = [&](const std::vector<double>& c) { return c[j] + w * (c[j + 1] - c[j]); };
    out.tgt_x[k] = lerp(src.tgt_x);
    out.tgt_y[k] = lerp(src.tgt_y);
    if (rec.missing(j) || rec.missing(j + 1)) {
      out.gaze_x[k] = kNaN;
      out.gaze_y[k] = kNaN;
    } else {
      out.gaze_x[k] = lerp(src.gaze_x);
      out.gaze_y[k] = lerp(src.gaze_y);
    }
  }
  return GazeRecording(rec.id(), nominal_rate_hz.value_or(rec.nominal_rate_hz()), std::move(out));
}

std::vector<double> nominal_target_timestamps(double span_ms, double target_rate_hz, double start_ms) {
  if (!(target_rate_hz > 0.0)) throw std::invalid_argument("target rate must be > 0");
  const double period = 1000.0 / target_rate_hz;
  if (!(span_ms > period)) {
    throw std::invalid_argument("span of " + std::to_string(span_ms) + " ms does not exceed one target period");
  }
  const auto count = static_cast<std::size_t>(std::floor(span_ms / period + 1e-9)) + 1;
  std::vector<double> stamps(count);
  for (std::size_t i = 0; i < count; ++i) stamps[i] = start_ms + static_cast<double>(i) * period;
  return stamps;
}

std::vector<double> jitter_timestamps(std::span<const double> ts, double jitter_sigma_ms, Rng& rng,
                                      bool correction) {
  if (!(jitter_sigma_ms >= 0.0)) throw std::invalid_argument("jitter sigma must be >= 0");
  std::vector<double> out(ts.begin(), ts.end());
  if (ts.size() < 2 || jitter_sigma_ms == 0.0) return out;
  const double period = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  const double limit = 0.45 * period;
  if (!(jitter_sigma_ms < limit)) {
    throw std::invalid_argument("jitter sigma " + std::to_string(jitter_sigma_ms) + " ms must be below 0.45 T = " +
                                std::to_string(limit) + " ms");
  }
  const double sigma = correction ? jitter_sigma_ms / std::sqrt(2.0) : jitter_sigma_ms;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& t : out) t += std::clamp(sigma * normal(rng), -limit, limit);
  return out;
}

double eccentricity_alpha(double x, double y, const EccentricityWeighting& weighting) {
  const double r = std::hypot(x, y);
  const double d = r - weighting.r_max;
  return std::exp(-(d * d) / (2.0 * weighting.sigma_s * weighting.sigma_s));
}

GazeRecording add_precision_noise(const GazeRecording& rec, double sigma0_sq, Rng& rng,
                                  const std::optional<EccentricityWeighting>& weighting) {
  if (!(sigma0_sq >= 0.0)) throw std::invalid_argument("sigma0_sq must be >= 0");
  // Draws are consumed even for zero variance so later stages see the same
  // stream position.
  const std::vector<double> z = standard_normals(rng, 2 * rec.size());
  if (sigma0_sq == 0.0) return rec;
  GazeSamples out = rec.samples();
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (rec.missing(i)) continue;
    double variance = sigma0_sq;
    if (weighting) variance *= eccentricity_alpha(out.gaze_x[i], out.gaze_y[i], *weighting);
    const double sigma = std::sqrt(variance);
    out.gaze_x[i] += sigma * z[2 * i];
    out.gaze_y[i] += sigma * z[2 * i + 1];
  }
  return GazeRecording(rec.id(), rec.nominal_rate_hz(), std::move(out));
}

double anti_alias_cutoff_hz(double target_rate_hz) { return 0.8 * (target_rate_hz / 2.0); }

namespace {

FilterSpec target_filter(const DegradationPlan& plan, const DegradeOptions& options) {
  return {anti_alias_cutoff_hz(plan.target_rate_hz), options.filter_order, true};
}

std::vector<double> nominal_grid_for(const GazeRecording& rec, double target_rate_hz) {
  return nominal_target_timestamps(rec.t_ms().back() - rec.t_ms().front(), target_rate_hz, rec.t_ms().front());
}

}  // namespace

GazeRecording degrade_benchmark(const GazeRecording& rec, const DegradationPlan& plan,
                                const DegradeOptions& options) {
  validate_plan(plan, rec.nominal_rate_hz());
  Rng rng(plan.rng_seed);
  const FilterSpec filter = target_filter(plan, options);
  const std::vector<double> grid = nominal_grid_for(rec, plan.target_rate_hz);

  if (options.noise_order == NoiseOrder::pre) {
    const GazeRecording noisy = add_precision_noise(rec, plan.sigma0_sq, rng, plan.eccentricity_weighting);
    return resample_spline(lowpass_zero_phase(noisy, filter), grid, plan.target_rate_hz);
  }
  const GazeRecording low = resample_spline(lowpass_zero_phase(rec, filter), grid, plan.target_rate_hz);
  return add_precision_noise(low, plan.sigma0_sq, rng, plan.eccentricity_weighting);
}

AccuracyStepSignal::Offset AccuracyStepSignal::at(double t_ms) const noexcept {
  // Steps are ordered by onset.
  auto it = std::upper_bound(steps.begin(), steps.end(), t_ms,
                             [](double t, const AccuracyStep& s) { return t < s.window.onset_ms; });
  if (it == steps.begin()) return {};
  --it;
  return {it->offset_x, it->offset_y};
}

AccuracyStepSignal build_accuracy_signal(const GazeRecording& rec, const DegradationPlan& plan,
                                         const LatencyEstimate& latency, Rng& rng,
                                         const PartitionConfig& partition) {
  std::vector<FixationWindow> windows = extract_fixations(rec, latency, partition);
  if (windows.empty()) throw ComputationError(rec.id() + ": zero fixations for the accuracy signal");

  const double m_h = plan.acc_offset_h;
  const double m_v = plan.acc_offset_v;
  // 99.7% (three sigma) of magnitudes within 20% of the mean.
  const double sd_h = 0.2 * m_h / 3.0;
  const double sd_v = 0.2 * m_v / 3.0;

  const std::size_t n = windows.size();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> mag_x(n), mag_y(n);
  for (std::size_t k = 0; k < n; ++k) {
    mag_x[k] = m_h + sd_h * normal(rng);
    mag_y[k] = m_v + sd_v * normal(rng);
  }
  std::uniform_int_distribution<int> coin(0, 1);
  AccuracyStepSignal signal;
  signal.steps.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sx = coin(rng) ? 1.0 : -1.0;
    const double sy = coin(rng) ? 1.0 : -1.0;
    signal.steps.push_back({std::move(windows[k]), sx * mag_x[k], sy * mag_y[k]});
  }
  return signal;
}

GazeRecording apply_accuracy_signal(const GazeRecording& rec, const AccuracyStepSignal& signal) {
  GazeSamples out = rec.samples();
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const auto offset = signal.at(out.t_ms[i]);
    out.gaze_x[i] += offset.x;
    out.gaze_y[i] += offset.y;
  }
  return GazeRecording(rec.id(), rec.nominal_rate_hz(), std::move(out));
}

GazeRecording degrade_modified(const GazeRecording& rec, const DegradationPlan& plan, const DegradeOptions& options) {
  validate_plan(plan, rec.nominal_rate_hz());
  Rng rng(plan.rng_seed);

  const LatencyEstimate latency = estimate_latency(rec, options.metrics.latency);
  const AccuracyStepSignal signal = build_accuracy_signal(rec, plan, latency, rng, options.metrics.partition);
  const GazeRecording offset = apply_accuracy_signal(rec, signal);

  const FilterSpec filter = target_filter(plan, options);
  const std::vector<double> grid = nominal_grid_for(rec, plan.target_rate_hz);

  if (options.noise_order == NoiseOrder::pre) {
    const GazeRecording noisy = add_precision_noise(offset, plan.sigma0_sq, rng);
    const GazeRecording low = lowpass_zero_phase(noisy, filter);
    const auto stamps = clip_to_span(jitter_timestamps(grid, plan.jitter_sigma_ms, rng, options.jitter_correction),
                                     rec.t_ms().front(), rec.t_ms().back());
    return resample_spline(low, stamps, plan.target_rate_hz);
  }
  // Post ordering: noise for every nominal grid point is drawn before the
  // jitter so the draw order matches the pre ordering.
  const GazeRecording low = lowpass_zero_phase(offset, filter);
  const std::vector<double> z = standard_normals(rng, 2 * grid.size());
  const std::vector<double> jittered = jitter_timestamps(grid, plan.jitter_sigma_ms, rng, options.jitter_correction);
  std::vector<double> stamps;
  std::vector<std::size_t> origin;
  for (std::size_t k = 0; k < jittered.size(); ++k) {
    if (jittered[k] < rec.t_ms().front() || jittered[k] > rec.t_ms().back()) continue;
    stamps.push_back(jittered[k]);
    origin.push_back(k);
  }
  const GazeRecording resampled = resample_spline(low, stamps, plan.target_rate_hz);
  if (plan.sigma0_sq == 0.0) return resampled;  // draws already consumed
  GazeSamples out = resampled.samples();
  const double sigma = std::sqrt(plan.sigma0_sq);
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    if (resampled.missing(i)) continue;
    out.gaze_x[i] += sigma * z[2 * origin[i]];
    out.gaze_y[i] += sigma * z[2 * origin[i] + 1];
  }
  return GazeRecording(rec.id(), plan.target_rate_hz, std::move(out));
}

JitterMatching parse_jitter_matching(std::string_view name) {
  if (name == "median") return JitterMatching::median;
  if (name == "percentile") return JitterMatching::percentile;
  throw std::invalid_argument("unknown jitter matching '" + std::string(name) + "'");
}

AccuracyMatching parse_accuracy_matching(std::string_view name) {
  if (name == "difference") return AccuracyMatching::difference;
  if (name == "folded") return AccuracyMatching::folded;
  throw std::invalid_argument("unknown accuracy matching '" + std::string(name) + "'");
}

namespace {

// Mean of |N(m, sigma^2)|.
double folded_mean(double m, double sigma) {
  if (sigma <= 0.0) return std::fabs(m);
  return sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-m * m / (2.0 * sigma * sigma)) +
         m * std::erf(m / (sigma * std::sqrt(2.0)));
}

double folded_offset(double source_acc, double wanted) {
  if (!(wanted > source_acc)) return 0.0;
  const double sigma = source_acc * std::sqrt(std::numbers::pi / 2.0);
  double lo = 0.0;
  double hi = wanted;  // folded_mean(wanted) >= wanted
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (folded_mean(mid, sigma) < wanted ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DegradationPlan plan_modified(const QualityVector& source_qv, double source_post_pipeline_prec_c,
                              std::span<const QualityVector> source_corpus,
                              std::span<const QualityVector> target_corpus, const CalibrationCurve& calib,
                              double target_rate_hz, std::uint64_t rng_seed, PlanDiagnostics* diagnostics,
                              const PlanOptions& options) {
  if (source_corpus.empty() || target_corpus.empty()) throw std::invalid_argument("plan: corpora must be non-empty");
  validate_curve(calib);

  auto column = [](std::span<const QualityVector> corpus, double QualityVector::*field) {
    std::vector<double> v;
    v.reserve(corpus.size());
    for (const auto& q : corpus) v.push_back(q.*field);
    return v;
  };

  PlanDiagnostics diag;
  DegradationPlan plan;
  plan.target_rate_hz = target_rate_hz;
  plan.rng_seed = rng_seed;

  // Precision.
  const auto src_prec = column(source_corpus, &QualityVector::prec_c);
  const auto tgt_prec = column(target_corpus, &QualityVector::prec_c);
  diag.source_rank = stats::percentile_rank(source_qv.prec_c, src_prec);
  diag.target_prec_c = stats::quantile(tgt_prec, diag.source_rank);
  const double gap = diag.target_prec_c * diag.target_prec_c - source_post_pipeline_prec_c * source_post_pipeline_prec_c;
  diag.marginal_prec_c = std::sqrt(std::max(gap, 0.0));
  diag.marginal_prec_h = diag.marginal_prec_c / std::sqrt(2.0);
  const CurveInverse inverse = invert_curve(calib, diag.marginal_prec_h, options.inverse);
  plan.sigma0_sq = inverse.sigma0_sq;
  diag.sigma_clamped = inverse.clamped;
  if (inverse.clamped && inverse.sigma0_sq > 0.0) {
    diag.warnings.push_back("required dispersion " + std::to_string(diag.marginal_prec_h) +
                            " dva exceeds the calibration curve; sigma0_sq clamped to " +
                            std::to_string(inverse.sigma0_sq));
  }

  // Accuracy, per channel.
  auto match_offset = [&](double QualityVector::*field) {
    const auto src = column(source_corpus, field);
    const auto tgt = column(target_corpus, field);
    const double p = stats::percentile_rank(source_qv.*field, src);
    const double wanted = stats::quantile(tgt, p);
    if (options.accuracy == AccuracyMatching::folded) return folded_offset(source_qv.*field, wanted);
    return std::max(wanted - source_qv.*field, 0.0);
  };
  plan.acc_offset_h = match_offset(&QualityVector::acc_h);
  plan.acc_offset_v = match_offset(&QualityVector::acc_v);

  const auto tgt_temporal = column(target_corpus, &QualityVector::temporal_prec_ms);
  if (options.jitter == JitterMatching::median) {
    plan.jitter_sigma_ms = stats::median(tgt_temporal);
  } else {
    Rng tie_rng(derive_seed(rng_seed, "jitter", "plan"));
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(tie_rng);
    const double p = stats::percentile_rank_tied(source_qv.temporal_prec_ms,
                                                 column(source_corpus, &QualityVector::temporal_prec_ms), u);
    plan.jitter_sigma_ms = stats::quantile(tgt_temporal, p);
  }

  if (diagnostics) *diagnostics = std::move(diag);
  return plan;
}

}  // namespace gazesynth
