#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "gazesynth/metrics.hpp"
#include "gazesynth/oracle.hpp"
#include "gazesynth/stats.hpp"

using namespace gazesynth;

TEST_CASE("perfect tracker with no latency: gaze equals target") {
  OracleSpec spec;
  spec.latency_ms = 0.0;
  spec.seed = 4;
  const auto o = generate_recording(spec);
  CHECK(o.recording.gaze_x() == o.recording.tgt_x());
  CHECK(o.recording.gaze_y() == o.recording.tgt_y());
  CHECK(o.recording.size() == 20000);
}

TEST_CASE("gaze decomposes into delayed target, bias and noise") {
  OracleSpec spec;
  spec.latency_ms = 150.0;
  spec.bias_sigma_dva = 0.3;
  spec.noise_sigma_dva = 0.1;
  spec.rate_hz = 250.0;
  spec.isi_jitter_ms = 0.5;
  spec.dwell_min_ms = 1000;
  spec.dwell_max_ms = 1500;
  spec.seed = 8;
  const auto o = generate_recording(spec);
  const auto& rec = o.recording;
  const auto& gt = o.truth;
  REQUIRE(gt.dwells.size() == spec.n_targets);
  for (std::size_t k = 0; k < gt.dwells.size(); ++k) {
    const auto& d = gt.dwells[k];
    CHECK(d.duration_ms >= 1000);
    CHECK(d.duration_ms <= 1500);
    CHECK(std::fabs(d.tgt_x) <= 15.0);
    CHECK(std::fabs(d.tgt_y) <= 10.0);
    if (k > 0) CHECK(d.onset_ms == doctest::Approx(gt.dwells[k - 1].onset_ms + gt.dwells[k - 1].duration_ms));
  }
  auto dwell_index = [&](double t) {
    std::size_t k = 0;
    while (k + 1 < gt.dwells.size() && t >= gt.dwells[k + 1].onset_ms) ++k;
    return k;
  };
  for (std::size_t i = 0; i < rec.size(); i += 7) {
    const double t = rec.t_ms()[i];
    const auto& stim = gt.dwells[dwell_index(t)];
    const auto& seen = gt.dwells[dwell_index(t - spec.latency_ms)];
    CHECK(rec.tgt_x()[i] == stim.tgt_x);
    CHECK(rec.gaze_x()[i] == doctest::Approx(seen.tgt_x + seen.bias_x + gt.noise_x[i]).epsilon(1e-12));
    CHECK(rec.gaze_y()[i] == doctest::Approx(seen.tgt_y + seen.bias_y + gt.noise_y[i]).epsilon(1e-12));
    CHECK(t == doctest::Approx(4.0 * i + gt.jitter_ms[i]));
  }
  CHECK(stats::population_std(gt.noise_x) == doctest::Approx(0.1).epsilon(0.05));
  CHECK(stats::population_std(gt.jitter_ms) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("metrics recover generator parameters") {
  OracleSpec spec;
  spec.noise_sigma_dva = 0.2;
  spec.seed = 12;
  spec.latency_ms = 200.0;
  const auto rec = generate_recording(spec).recording;
  CHECK(recording_quality(rec).prec_h == doctest::Approx(0.1349).epsilon(0.10));
  CHECK(std::fabs(estimate_latency(rec).shift_ms - 200.0) <= 1.0);
}

TEST_CASE("corpus generation") {
  SUBCASE("singleton") {
    const auto c = generate_corpus(corpus_preset("eyelink-like"), 1, 5);
    CHECK(c.recordings.size() == 1);
    CHECK(c.recordings[0].id() == "eyelink-like_0000");
  }
  SUBCASE("presets differ in quality") {
    const auto el = generate_corpus(corpus_preset("eyelink-like"), 8, 1);
    const auto vr = generate_corpus(corpus_preset("vr-like"), 8, 1);
    std::vector<double> pe, pv, te, tv;
    for (const auto& r : el.recordings) {
      const auto q = recording_quality(r);
      pe.push_back(q.prec_c);
      te.push_back(q.temporal_prec_ms);
    }
    for (const auto& r : vr.recordings) {
      const auto q = recording_quality(r);
      pv.push_back(q.prec_c);
      tv.push_back(q.temporal_prec_ms);
    }
    CHECK(stats::median(pv) > stats::median(pe));
    CHECK(stats::median(te) == 0.0);
    CHECK(stats::median(tv) > 0.0);
    CHECK(vr.recordings[0].nominal_rate_hz() == 250.0);
    for (const auto& t : vr.truth) {
      CHECK(t.spec.noise_sigma_dva >= 0.08);
      CHECK(t.spec.noise_sigma_dva <= 0.2);
      CHECK(t.spec.latency_ms >= 150.0);
      CHECK(t.spec.latency_ms <= 250.0);
    }
  }
  SUBCASE("identical seed, identical corpus") {
    const auto a = generate_corpus(corpus_preset("vr-like"), 3, 99);
    const auto b = generate_corpus(corpus_preset("vr-like"), 3, 99);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& x = a.recordings[i].gaze_x();
      const auto& y = b.recordings[i].gaze_x();
      REQUIRE(x.size() == y.size());
      CHECK(std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0);
      CHECK(a.recordings[i].t_ms() == b.recordings[i].t_ms());
    }
    const auto c = generate_corpus(corpus_preset("vr-like"), 3, 100);
    CHECK(c.recordings[0].gaze_x() != a.recordings[0].gaze_x());
  }
  CHECK_THROWS(corpus_preset("tobii-like"));
  CHECK_THROWS(generate_corpus(corpus_preset("vr-like"), 0, 1));
}

TEST_CASE("spec validation") {
  OracleSpec s;
  s.n_targets = 0;
  CHECK_THROWS(generate_recording(s));
  s = OracleSpec{};
  s.noise_sigma_dva = -1;
  CHECK_THROWS(generate_recording(s));
  s = OracleSpec{};
  s.dwell_min_ms = 2000;
  s.dwell_max_ms = 1000;
  CHECK_THROWS(generate_recording(s));
}
