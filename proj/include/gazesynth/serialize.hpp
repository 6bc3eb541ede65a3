#pragma once

// JSON documents: degradation plans (flat key/value), calibration curves
// and assessment reports. Key order is sorted, so output is byte-stable.

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gazesynth/assess.hpp"
#include "gazesynth/oracle.hpp"
#include "gazesynth/recording.hpp"

namespace gazesynth {

struct PlanProvenance {
  std::string recording_id;
  std::string model;  // baseline | modified
  std::string noise_order;
  bool jitter_correction = false;
  std::string source_corpus_hash;
  std::string target_corpus_hash;
  std::string calibration_id;
};

nlohmann::json plan_to_json(const DegradationPlan& plan, const PlanProvenance& provenance);
DegradationPlan plan_from_json(const nlohmann::json& doc);

struct CalibrationProvenance {
  std::string corpus_hash;
  std::string grid;
  std::uint64_t seed = 0;
  double target_rate_hz = 0.0;
  std::string noise_order;
};

/// Adds an "id" derived from the curve contents.
nlohmann::json calibration_to_json(const CalibrationCurve& curve, const CalibrationProvenance& provenance);
CalibrationCurve calibration_from_json(const nlohmann::json& doc);
std::string calibration_id(const nlohmann::json& doc);

nlohmann::json assessment_to_json(const TwoSampleResult& result);

/// dump(2) plus a trailing newline.
std::string to_text(const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

std::string hex64(std::uint64_t v);

/// Corpus spec files for the generator. Missing keys keep their defaults;
/// ranges are {"min", "max", "log_uniform"} objects or a single number.
CorpusSpec corpus_spec_from_json(const nlohmann::json& doc);
nlohmann::json corpus_spec_to_json(const CorpusSpec& spec);

}  // namespace gazesynth
