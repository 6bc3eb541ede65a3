#include "gazesynth/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>

#include "gazesynth/io.hpp"
#include "gazesynth/seeding.hpp"

namespace gazesynth {

using nlohmann::json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json plan_to_json(const DegradationPlan& plan, const PlanProvenance& p) {
  json doc;
  doc["recording_id"] = p.recording_id;
  doc["model"] = p.model;
  doc["target_rate_hz"] = plan.target_rate_hz;
  doc["sigma0_sq"] = plan.sigma0_sq;
  doc["acc_offset_h"] = plan.acc_offset_h;
  doc["acc_offset_v"] = plan.acc_offset_v;
  doc["jitter_sigma_ms"] = plan.jitter_sigma_ms;
  doc["rng_seed"] = plan.rng_seed;
  if (plan.eccentricity_weighting) {
    doc["eccentricity_sigma_s"] = plan.eccentricity_weighting->sigma_s;
    doc["eccentricity_r_max"] = plan.eccentricity_weighting->r_max;
  } else {
    doc["eccentricity_sigma_s"] = nullptr;
    doc["eccentricity_r_max"] = nullptr;
  }
  doc["noise_order"] = p.noise_order;
  doc["jitter_correction"] = p.jitter_correction;
  doc["source_corpus_hash"] = p.source_corpus_hash;
  doc["target_corpus_hash"] = p.target_corpus_hash;
  doc["calibration_id"] = p.calibration_id;
  return doc;
}

DegradationPlan plan_from_json(const json& doc) {
  DegradationPlan plan;
  plan.target_rate_hz = doc.at("target_rate_hz").get<double>();
  plan.sigma0_sq = doc.at("sigma0_sq").get<double>();
  plan.acc_offset_h = doc.at("acc_offset_h").get<double>();
  plan.acc_offset_v = doc.at("acc_offset_v").get<double>();
  plan.jitter_sigma_ms = doc.at("jitter_sigma_ms").get<double>();
  plan.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
  if (doc.contains("eccentricity_sigma_s") && !doc["eccentricity_sigma_s"].is_null()) {
    plan.eccentricity_weighting =
        EccentricityWeighting{doc["eccentricity_sigma_s"].get<double>(), doc.at("eccentricity_r_max").get<double>()};
  }
  return plan;
}

namespace {

json curve_body(const CalibrationCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.samples) points.push_back({{"sigma0_sq", p.sigma0_sq}, {"mad_h", p.mad_h}});
  return {{"points", points}, {"slope", curve.slope}, {"intercept", curve.intercept}};
}

}  // namespace

std::string calibration_id(const json& doc) {
  json body = doc;
  body.erase("id");
  return hex64(fnv1a(body.dump()));
}

json calibration_to_json(const CalibrationCurve& curve, const CalibrationProvenance& p) {
  json doc = curve_body(curve);
  doc["provenance"] = {{"corpus_hash", p.corpus_hash},
                       {"grid", p.grid},
                       {"seed", p.seed},
                       {"target_rate_hz", p.target_rate_hz},
                       {"noise_order", p.noise_order},
                       {"aggregation", "median prec_h over recordings"}};
  doc["id"] = calibration_id(doc);
  return doc;
}

CalibrationCurve calibration_from_json(const json& doc) {
  CalibrationCurve curve;
  for (const auto& p : doc.at("points")) {
    curve.samples.push_back({p.at("sigma0_sq").get<double>(), p.at("mad_h").get<double>()});
  }
  curve.slope = doc.at("slope").get<double>();
  curve.intercept = doc.at("intercept").get<double>();
  validate_curve(curve);
  return curve;
}

json assessment_to_json(const TwoSampleResult& r) {
  json reps = json::array();
  for (std::size_t i = 0; i < r.repeats.size(); ++i) {
    const auto& rep = r.repeats[i];
    reps.push_back({{"repeat", i},
                    {"seed", rep.seed},
                    {"combined_accuracy", rep.combined},
                    {"real_accuracy", rep.real},
                    {"synthetic_accuracy", rep.synthetic}});
  }
  return {{"combined_accuracy", {{"median", r.combined_accuracy}, {"range", r.combined_range}}},
          {"real_accuracy", {{"median", r.real_accuracy}, {"range", r.real_range}}},
          {"synthetic_accuracy", {{"median", r.synthetic_accuracy}, {"range", r.synthetic_range}}},
          {"n_per_class", r.n_per_class},
          {"seed", r.seed},
          {"repeats", reps}};
}

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

namespace {

ParamRange range_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), v.get<double>()};
  return {v.at("min").get<double>(), v.at("max").get<double>(), v.value("log_uniform", false)};
}

json range_to_json(const ParamRange& r) { return {{"min", r.min}, {"max", r.max}, {"log_uniform", r.log_uniform}}; }

}  // namespace

CorpusSpec corpus_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw IoError("corpus spec must be a JSON object");
  static const char* known[] = {"name",          "n_targets",    "dwell_min_ms",   "dwell_max_ms",
                                "extent_x_dva",  "extent_y_dva", "rate_hz",        "latency_ms",
                                "bias_sigma_dva", "noise_sigma_dva", "isi_jitter_ms"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw IoError("unknown corpus spec key '" + key + "'");
    }
  }
  CorpusSpec s;
  s.name = doc.value("name", s.name);
  s.n_targets = doc.value("n_targets", s.n_targets);
  s.dwell_min_ms = doc.value("dwell_min_ms", s.dwell_min_ms);
  s.dwell_max_ms = doc.value("dwell_max_ms", s.dwell_max_ms);
  s.extent_x_dva = doc.value("extent_x_dva", s.extent_x_dva);
  s.extent_y_dva = doc.value("extent_y_dva", s.extent_y_dva);
  s.rate_hz = doc.value("rate_hz", s.rate_hz);
  if (doc.contains("latency_ms")) s.latency_ms = range_from_json(doc["latency_ms"]);
  if (doc.contains("bias_sigma_dva")) s.bias_sigma_dva = range_from_json(doc["bias_sigma_dva"]);
  if (doc.contains("noise_sigma_dva")) s.noise_sigma_dva = range_from_json(doc["noise_sigma_dva"]);
  if (doc.contains("isi_jitter_ms")) s.isi_jitter_ms = range_from_json(doc["isi_jitter_ms"]);
  return s;
}

json corpus_spec_to_json(const CorpusSpec& s) {
  return {{"name", s.name},
          {"n_targets", s.n_targets},
          {"dwell_min_ms", s.dwell_min_ms},
          {"dwell_max_ms", s.dwell_max_ms},
          {"extent_x_dva", s.extent_x_dva},
          {"extent_y_dva", s.extent_y_dva},
          {"rate_hz", s.rate_hz},
          {"latency_ms", range_to_json(s.latency_ms)},
          {"bias_sigma_dva", range_to_json(s.bias_sigma_dva)},
          {"noise_sigma_dva", range_to_json(s.noise_sigma_dva)},
          {"isi_jitter_ms", range_to_json(s.isi_jitter_ms)}};
}

}  // namespace gazesynth
