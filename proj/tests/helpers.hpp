#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gazesynth/recording.hpp"

namespace testutil {

using gazesynth::GazeRecording;
using gazesynth::GazeSamples;

inline GazeRecording make_recording(std::vector<double> t, std::vector<double> gx, std::vector<double> gy,
                                    std::vector<double> tx, std::vector<double> ty, double rate = 1000.0,
                                    std::string id = "rec") {
  return GazeRecording(std::move(id), rate,
                       GazeSamples{std::move(t), std::move(gx), std::move(gy), std::move(tx), std::move(ty)});
}

// Gaze fixed at (gx, gy), target fixed at (tx, ty), n samples on a uniform grid.
inline GazeRecording constant_recording(std::size_t n, double gx, double gy, double tx = 0.0, double ty = 0.0,
                                        double rate = 1000.0) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * 1000.0 / rate;
  return make_recording(t, std::vector<double>(n, gx), std::vector<double>(n, gy), std::vector<double>(n, tx),
                        std::vector<double>(n, ty), rate);
}

struct Dwell {
  double ms;
  double x;
  double y;
};

// Step target through the dwells; gaze = target delayed by latency_ms (the
// previous target before the first transition is the first dwell).
inline GazeRecording stepped_recording(const std::vector<Dwell>& dwells, double latency_ms, double rate = 1000.0,
                                       double noise_sigma = 0.0, unsigned seed = 1, double tail_ms = 0.0) {
  double total = tail_ms;
  for (const auto& d : dwells) total += d.ms;
  const double period = 1000.0 / rate;
  const auto n = static_cast<std::size_t>(std::llround(total / period));
  auto target_at = [&](double t) {
    double start = 0.0;
    for (const auto& d : dwells) {
      if (t < start + d.ms) return d;
      start += d.ms;
    }
    return dwells.back();
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_sigma > 0 ? noise_sigma : 1.0);
  GazeSamples s;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * period;
    const Dwell tg = target_at(t);
    const Dwell g = target_at(std::max(0.0, t - latency_ms));
    s.t_ms.push_back(t);
    s.tgt_x.push_back(tg.x);
    s.tgt_y.push_back(tg.y);
    s.gaze_x.push_back(g.x + (noise_sigma > 0 ? noise_sigma * noise(rng) : 0.0));
    s.gaze_y.push_back(g.y + (noise_sigma > 0 ? noise_sigma * noise(rng) : 0.0));
  }
  return GazeRecording("stepped", rate, std::move(s));
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("gazesynth_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Plain reference implementations used as oracles.
inline double ref_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double ref_std(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace testutil
