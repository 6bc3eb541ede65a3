#include "gazesynth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "gazesynth/degrade.hpp"
#include "gazesynth/parallel.hpp"
#include "gazesynth/seeding.hpp"

namespace gazesynth {

void validate_oracle_spec(const OracleSpec& s) {
  if (s.n_targets < 1) throw std::invalid_argument("oracle: n_targets must be >= 1");
  if (!(s.rate_hz > 0.0)) throw std::invalid_argument("oracle: rate must be > 0");
  if (!(s.dwell_min_ms >= 0.0) || !(s.dwell_max_ms >= s.dwell_min_ms)) {
    throw std::invalid_argument("oracle: dwell range must satisfy 0 <= min <= max");
  }
  if (!(s.latency_ms >= 0.0) || !(s.bias_sigma_dva >= 0.0) || !(s.noise_sigma_dva >= 0.0) ||
      !(s.isi_jitter_ms >= 0.0)) {
    throw std::invalid_argument("oracle: latency and standard deviations must be >= 0");
  }
  if (!(s.extent_x_dva >= 0.0) || !(s.extent_y_dva >= 0.0)) throw std::invalid_argument("oracle: extent must be >= 0");
}

OracleRecording generate_recording(const OracleSpec& spec) {
  validate_oracle_spec(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  GroundTruth truth;
  truth.spec = spec;
  double onset = 0.0;
  for (std::size_t k = 0; k < spec.n_targets; ++k) {
    OracleDwell d;
    d.onset_ms = onset;
    d.duration_ms = spec.dwell_min_ms + (spec.dwell_max_ms - spec.dwell_min_ms) * unit(rng);
    double x = 0.0;
    double y = 0.0;
    // Consecutive targets must differ, or the transition is invisible.
    do {
      x = (2.0 * unit(rng) - 1.0) * spec.extent_x_dva;
      y = (2.0 * unit(rng) - 1.0) * spec.extent_y_dva;
    } while (k > 0 && x == truth.dwells.back().tgt_x && y == truth.dwells.back().tgt_y);
    d.tgt_x = x;
    d.tgt_y = y;
    onset += d.duration_ms;
    truth.dwells.push_back(d);
  }
  for (auto& d : truth.dwells) {
    d.bias_x = spec.bias_sigma_dva * normal(rng);
    d.bias_y = spec.bias_sigma_dva * normal(rng);
  }

  const double period = 1000.0 / spec.rate_hz;
  const double total_ms = onset + spec.latency_ms;
  const auto n = static_cast<std::size_t>(std::floor(total_ms / period + 1e-9));
  if (n < 3) throw std::invalid_argument("oracle: recording shorter than 3 samples");

  std::vector<double> nominal(n);
  for (std::size_t i = 0; i < n; ++i) nominal[i] = static_cast<double>(i) * period;
  GazeSamples s;
  s.t_ms = jitter_timestamps(nominal, spec.isi_jitter_ms, rng, false);
  truth.jitter_ms.resize(n);
  for (std::size_t i = 0; i < n; ++i) truth.jitter_ms[i] = s.t_ms[i] - nominal[i];

  truth.noise_x.resize(n);
  truth.noise_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    truth.noise_x[i] = spec.noise_sigma_dva * normal(rng);
    truth.noise_y[i] = spec.noise_sigma_dva * normal(rng);
  }

  auto dwell_at = [&](double t) -> const OracleDwell& {
    auto it = std::upper_bound(truth.dwells.begin(), truth.dwells.end(), t,
                               [](double v, const OracleDwell& d) { return v < d.onset_ms; });
    return it == truth.dwells.begin() ? truth.dwells.front() : *std::prev(it);
  };

  s.gaze_x.resize(n);
  s.gaze_y.resize(n);
  s.tgt_x.resize(n);
  s.tgt_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const OracleDwell& stim = dwell_at(s.t_ms[i]);
    const OracleDwell& seen = dwell_at(s.t_ms[i] - spec.latency_ms);
    s.tgt_x[i] = stim.tgt_x;
    s.tgt_y[i] = stim.tgt_y;
    s.gaze_x[i] = seen.tgt_x + seen.bias_x + truth.noise_x[i];
    s.gaze_y[i] = seen.tgt_y + seen.bias_y + truth.noise_y[i];
  }
  return {GazeRecording(spec.recording_id, spec.rate_hz, std::move(s)), std::move(truth)};
}

double ParamRange::draw(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  if (log_uniform && min > 0.0) return std::exp(std::log(min) + u * (std::log(max) - std::log(min)));
  return min + u * (max - min);
}

CorpusSpec corpus_preset(std::string_view name) {
  CorpusSpec spec;
  if (name == "eyelink-like") {
    spec.name = "eyelink-like";
    spec.rate_hz = 1000.0;
    spec.dwell_min_ms = spec.dwell_max_ms = 1000.0;
    spec.bias_sigma_dva = {0.05, 0.25};
    spec.noise_sigma_dva = {0.02, 0.05, true};
    spec.isi_jitter_ms = {0.0, 0.0};
    return spec;
  }
  if (name == "vr-like") {
    spec.name = "vr-like";
    spec.rate_hz = 250.0;
    spec.dwell_min_ms = 1000.0;
    spec.dwell_max_ms = 1500.0;
    spec.bias_sigma_dva = {0.3, 0.9};
    spec.noise_sigma_dva = {0.08, 0.2, true};
    spec.isi_jitter_ms = {0.3, 0.7};
    return spec;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected eyelink-like or vr-like)");
}

OracleCorpus generate_corpus(const CorpusSpec& spec, std::size_t n_recordings, std::uint64_t seed) {
  if (n_recordings < 1) throw std::invalid_argument("corpus needs n >= 1");
  std::vector<std::optional<OracleRecording>> out(n_recordings);
  parallel_for(n_recordings, [&](std::size_t i) {
    std::mt19937_64 param_rng(derive_seed(seed, i, "oracle-params"));
    OracleSpec r;
    char id[32];
    std::snprintf(id, sizeof id, "_%04zu", i);
    r.recording_id = spec.name + id;
    r.n_targets = spec.n_targets;
    r.dwell_min_ms = spec.dwell_min_ms;
    r.dwell_max_ms = spec.dwell_max_ms;
    r.extent_x_dva = spec.extent_x_dva;
    r.extent_y_dva = spec.extent_y_dva;
    r.rate_hz = spec.rate_hz;
    r.latency_ms = spec.latency_ms.draw(param_rng);
    r.bias_sigma_dva = spec.bias_sigma_dva.draw(param_rng);
    r.noise_sigma_dva = spec.noise_sigma_dva.draw(param_rng);
    r.isi_jitter_ms = spec.isi_jitter_ms.draw(param_rng);
    r.seed = derive_seed(seed, i, "oracle");
    out[i] = generate_recording(r);
  });
  OracleCorpus corpus;
  for (auto& o : out) {
    corpus.recordings.push_back(std::move(o->recording));
    corpus.truth.push_back(std::move(o->truth));
  }
  return corpus;
}

}  // namespace gazesynth
