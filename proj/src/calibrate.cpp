#include "gazesynth/calibrate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gazesynth/degrade.hpp"
#include "gazesynth/metrics.hpp"
#include "gazesynth/parallel.hpp"
#include "gazesynth/seeding.hpp"
#include "gazesynth/stats.hpp"

namespace gazesynth {

std::vector<double> parse_grid(std::string_view text) {
  double parts[3];
  std::size_t idx = 0;
  std::size_t pos = 0;
  bool trailing = false;
  while (idx < 3) {
    const std::size_t colon = text.find(':', pos);
    const std::string_view field = text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos);
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[idx]);
    if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
      throw std::invalid_argument("grid must be a:b:step, got '" + std::string(text) + "'");
    }
    ++idx;
    trailing = colon != std::string_view::npos;
    if (!trailing) break;
    pos = colon + 1;
  }
  if (idx != 3 || trailing) {
    throw std::invalid_argument("grid must be a:b:step, got '" + std::string(text) + "'");
  }
  const double a = parts[0];
  const double b = parts[1];
  const double step = parts[2];
  if (!(step > 0.0) || !(b >= a) || !(a >= 0.0)) {
    throw std::invalid_argument("grid needs 0 <= a <= b and step > 0");
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double v = a + static_cast<double>(i) * step;
    if (v > b + 1e-9) break;
    grid.push_back(v);
  }
  return grid;
}

CalibrationCurve fit_curve(std::vector<CalibrationPoint> points) {
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(p.sigma0_sq);
    y.push_back(p.mad_h);
  }
  const auto fit = stats::least_squares(x, y);
  CalibrationCurve curve;
  curve.samples = std::move(points);
  curve.slope = fit.slope;
  curve.intercept = fit.intercept;
  return curve;
}

double max_fit_residual(const CalibrationCurve& curve) {
  double worst = 0.0;
  for (const auto& p : curve.samples) worst = std::max(worst, std::fabs(p.mad_h - curve.evaluate(p.sigma0_sq)));
  return worst;
}

CalibrationCurve sweep_sigma(std::span<const GazeRecording> corpus, std::span<const double> grid,
                             double target_rate_hz, std::uint64_t seed, const DegradeOptions& options,
                             std::vector<std::string>* warnings) {
  if (corpus.empty()) throw std::invalid_argument("calibration corpus is empty");
  if (grid.size() < 3) throw std::invalid_argument("calibration grid needs >= 3 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("calibration grid must be strictly increasing");
  }

  // prec_h[g][r]; unusable recordings stay empty and are skipped.
  std::vector<std::vector<std::optional<double>>> prec(grid.size(), std::vector<std::optional<double>>(corpus.size()));
  std::vector<std::string> errors(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t r) {
    DegradationPlan plan;
    plan.target_rate_hz = target_rate_hz;
    plan.rng_seed = derive_seed(seed, corpus[r].id(), "calibrate");
    for (std::size_t g = 0; g < grid.size(); ++g) {
      plan.sigma0_sq = grid[g];
      try {
        prec[g][r] = recording_quality(degrade_benchmark(corpus[r], plan, options), options.metrics).prec_h;
      } catch (const ComputationError& e) {
        errors[r] = e.what();
      }
    }
  });

  std::vector<CalibrationPoint> points;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> values;
    for (const auto& v : prec[g]) {
      if (v) values.push_back(*v);
    }
    if (values.empty()) throw ComputationError("no recording produced metrics at sigma0_sq = " + std::to_string(grid[g]));
    points.push_back({grid[g], stats::median(values)});
  }
  if (warnings) {
    for (const auto& e : errors) {
      if (!e.empty()) warnings->push_back("calibration skipped: " + e);
    }
    for (std::size_t g = 1; g < points.size(); ++g) {
      if (points[g].mad_h <= points[g - 1].mad_h) {
        warnings->push_back("calibration curve not increasing at sigma0_sq = " + std::to_string(points[g].sigma0_sq));
      }
    }
  }
  return fit_curve(std::move(points));
}

CalibrationCurve sweep_sigma(std::span<const GazeRecording> corpus, std::span<const double> grid,
                             double target_rate_hz, std::uint64_t seed) {
  return sweep_sigma(corpus, grid, target_rate_hz, seed, DegradeOptions{});
}

InverseMethod parse_inverse_method(std::string_view name) {
  if (name == "linear") return InverseMethod::linear;
  if (name == "monotone") return InverseMethod::monotone;
  throw std::invalid_argument("unknown inverse method '" + std::string(name) + "'");
}

namespace {

double monotone_inverse(const CalibrationCurve& curve, double y) {
  std::vector<double> xs, ys;
  for (const auto& p : curve.samples) {
    const double v = ys.empty() ? p.mad_h : std::max(ys.back(), p.mad_h);
    // Flat steps carry no information about the inverse.
    if (!ys.empty() && v == ys.back()) continue;
    xs.push_back(p.sigma0_sq);
    ys.push_back(v);
  }
  if (xs.size() < 2) return (y - curve.intercept) / curve.slope;
  std::size_t k = std::upper_bound(ys.begin(), ys.end(), y) - ys.begin();
  k = std::clamp<std::size_t>(k, 1, ys.size() - 1);
  const double f = (y - ys[k - 1]) / (ys[k] - ys[k - 1]);
  return xs[k - 1] + f * (xs[k] - xs[k - 1]);
}

}  // namespace

CurveInverse invert_curve(const CalibrationCurve& curve, double desired_mad_h, InverseMethod method) {
  if (!(curve.slope > 0.0)) throw std::invalid_argument("calibration slope must be > 0 to invert");
  if (!(desired_mad_h >= 0.0)) throw std::invalid_argument("desired MAD_h must be >= 0");
  const double raw = method == InverseMethod::linear ? (desired_mad_h - curve.intercept) / curve.slope
                                                     : monotone_inverse(curve, desired_mad_h);
  const double hi = curve.max_sigma0_sq();
  CurveInverse inv;
  inv.sigma0_sq = std::clamp(raw, 0.0, hi);
  inv.clamped = raw < 0.0 || raw > hi;
  return inv;
}

}  // namespace gazesynth
