#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gazesynth/calibrate.hpp"
#include "gazesynth/io.hpp"
#include "gazesynth/serialize.hpp"

using namespace gazesynth;

TEST_CASE("plan documents round trip") {
  DegradationPlan plan;
  plan.target_rate_hz = 250;
  plan.sigma0_sq = 0.0731;
  plan.acc_offset_h = 0.3;
  plan.acc_offset_v = 0.1;
  plan.jitter_sigma_ms = 0.42;
  plan.rng_seed = 0xfedcba9876543210ULL;
  const auto doc = plan_to_json(plan, {"r1", "modified", "post", false, "aa", "bb", "cc"});
  CHECK(doc["eccentricity_sigma_s"].is_null());
  CHECK(doc["recording_id"] == "r1");
  const auto back = plan_from_json(nlohmann::json::parse(to_text(doc)));
  CHECK(back.sigma0_sq == plan.sigma0_sq);
  CHECK(back.rng_seed == plan.rng_seed);
  CHECK_FALSE(back.eccentricity_weighting);

  plan.eccentricity_weighting = EccentricityWeighting{0.2, 12.0};
  const auto back2 = plan_from_json(plan_to_json(plan, {}));
  REQUIRE(back2.eccentricity_weighting);
  CHECK(back2.eccentricity_weighting->r_max == 12.0);
}

TEST_CASE("calibration documents") {
  const auto curve = fit_curve({{0.02, 0.05}, {0.1, 0.12}, {0.2, 0.17}});
  const auto doc = calibration_to_json(curve, {"h", "0.02:0.2:0.09", 3, 250, "post"});
  CHECK(doc["id"].get<std::string>().size() == 16);
  CHECK(calibration_id(doc) == doc["id"]);
  auto other = calibration_to_json(curve, {"h", "0.02:0.2:0.09", 4, 250, "post"});
  CHECK(other["id"] != doc["id"]);
  const auto back = calibration_from_json(doc);
  CHECK(back.slope == curve.slope);
  CHECK(back.samples.size() == 3);

  auto bad = doc;
  bad["points"].erase(2);
  CHECK_THROWS(calibration_from_json(bad));
}

TEST_CASE("corpus spec files") {
  const auto s = corpus_spec_from_json(nlohmann::json::parse(
      R"({"name":"x","rate_hz":500,"noise_sigma_dva":0.1,"latency_ms":{"min":100,"max":300}})"));
  CHECK(s.name == "x");
  CHECK(s.rate_hz == 500);
  CHECK(s.noise_sigma_dva.min == 0.1);
  CHECK(s.noise_sigma_dva.max == 0.1);
  CHECK(s.latency_ms.max == 300);
  CHECK_FALSE(s.latency_ms.log_uniform);
  const auto again = corpus_spec_from_json(corpus_spec_to_json(s));
  CHECK(corpus_spec_to_json(again) == corpus_spec_to_json(s));
  CHECK_THROWS_AS(corpus_spec_from_json(nlohmann::json::parse(R"({"noise":0.1})")), IoError);
  CHECK_THROWS_AS(corpus_spec_from_json(nlohmann::json::parse("[1]")), IoError);
}

TEST_CASE("hex ids") {
  CHECK(hex64(0) == "0000000000000000");
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}
