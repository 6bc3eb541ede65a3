#pragma once

// Seed-deterministic generator of random-saccade recordings with known
// quality parameters: the ground truth every metric can be checked against.
//
// Gaze model: target delayed by the latency, plus a constant bias per
// fixation, plus white noise. No oculomotor tremor or 1/f component.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gazesynth/recording.hpp"

namespace gazesynth {

struct OracleSpec {
  std::string recording_id = "oracle";
  std::size_t n_targets = 20;
  double dwell_min_ms = 1000.0;
  double dwell_max_ms = 1000.0;
  double extent_x_dva = 15.0;
  double extent_y_dva = 10.0;
  double rate_hz = 1000.0;
  double latency_ms = 200.0;
  double bias_sigma_dva = 0.0;
  double noise_sigma_dva = 0.0;
  double isi_jitter_ms = 0.0;
  std::uint64_t seed = 0;
};

void validate_oracle_spec(const OracleSpec& spec);

struct OracleDwell {
  double onset_ms = 0.0;
  double duration_ms = 0.0;
  double tgt_x = 0.0;
  double tgt_y = 0.0;
  double bias_x = 0.0;
  double bias_y = 0.0;
};

struct GroundTruth {
  OracleSpec spec;
  std::vector<OracleDwell> dwells;
  std::vector<double> noise_x;
  std::vector<double> noise_y;
  std::vector<double> jitter_ms;
};

struct OracleRecording {
  GazeRecording recording;
  GroundTruth truth;
};

/// Draw order: dwell durations and positions, per-dwell biases, timestamp
/// jitter, per-sample noise (x then y). The target holds its last position
/// for latency_ms after the final dwell so every dwell is fully observed.
OracleRecording generate_recording(const OracleSpec& spec);

/// Per-recording parameter distribution.
struct ParamRange {
  double min = 0.0;
  double max = 0.0;
  bool log_uniform = false;

  double draw(std::mt19937_64& rng) const;
};

struct CorpusSpec {
  std::string name = "custom";
  std::size_t n_targets = 40;
  double dwell_min_ms = 1000.0;
  double dwell_max_ms = 1000.0;
  double extent_x_dva = 15.0;
  double extent_y_dva = 10.0;
  double rate_hz = 1000.0;
  ParamRange latency_ms{150.0, 250.0};
  ParamRange bias_sigma_dva{0.0, 0.0};
  ParamRange noise_sigma_dva{0.0, 0.0};
  ParamRange isi_jitter_ms{0.0, 0.0};
};

/// "eyelink-like" (1000 Hz, fixed 1000 ms dwells, low noise, exact clock)
/// or "vr-like" (250 Hz, 1000-1500 ms dwells, higher noise and bias, ISI
/// jitter). Throws std::invalid_argument for other names.
CorpusSpec corpus_preset(std::string_view name);

struct OracleCorpus {
  std::vector<GazeRecording> recordings;
  std::vector<GroundTruth> truth;
};

/// Recording i gets id "<name>_<i, 4 digits>" and seed
/// derive_seed(seed, i, "oracle"); parameters are drawn from that seed too.
OracleCorpus generate_corpus(const CorpusSpec& spec, std::size_t n_recordings, std::uint64_t seed);

}  // namespace gazesynth
