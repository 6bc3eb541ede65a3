#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gazesynth/calibrate.hpp"
#include "gazesynth/degrade.hpp"
#include "gazesynth/oracle.hpp"

using namespace gazesynth;

namespace {

std::vector<GazeRecording> corpus(double noise, std::size_t n = 6) {
  CorpusSpec spec;
  spec.name = "cal";
  spec.n_targets = 12;
  spec.noise_sigma_dva = {noise, noise};
  return generate_corpus(spec, n, 21).recordings;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.02:0.30:0.02");
  REQUIRE(g.size() == 15);
  CHECK(g.front() == doctest::Approx(0.02));
  CHECK(g.back() == doctest::Approx(0.30));
  CHECK(parse_grid("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_grid("0.1:0.1:1").size() == 1);
  CHECK_THROWS(parse_grid("0.1:0.3"));
  CHECK_THROWS(parse_grid("0.1:0.3:0"));
  CHECK_THROWS(parse_grid("0.3:0.1:0.1"));
  CHECK_THROWS(parse_grid("a:b:c"));
  CHECK_THROWS(parse_grid("0.1:0.3:0.1:4"));
  CHECK_THROWS(parse_grid("-0.1:0.3:0.1"));
}

TEST_CASE("zero variance on a noiseless corpus gives zero dispersion") {
  const auto c = corpus(0.0, 3);
  const std::vector<double> grid{0.0, 0.05, 0.1};
  const auto curve = sweep_sigma(c, grid, 250.0, 1);
  CHECK(curve.samples[0].sigma0_sq == 0.0);
  CHECK(curve.samples[0].mad_h == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("sweep is increasing and anchors near the published value") {
  const auto c = corpus(0.005);
  const std::vector<double> grid{0.05, 0.10, 0.15};
  std::vector<std::string> warnings;
  const auto curve = sweep_sigma(c, grid, 250.0, 3, DegradeOptions{}, &warnings);
  CHECK(curve.samples[1].mad_h > curve.samples[0].mad_h);
  CHECK(curve.samples[2].mad_h > curve.samples[1].mad_h);
  CHECK(warnings.empty());
  CHECK(curve.evaluate(0.13) >= 0.08);
  CHECK(curve.evaluate(0.13) <= 0.12);
  CHECK(curve.slope > 0.0);

  // Same seed, same curve.
  const auto again = sweep_sigma(c, grid, 250.0, 3);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(again.samples[k].mad_h == curve.samples[k].mad_h);
}

TEST_CASE("sweep argument checks") {
  const auto c = corpus(0.005, 1);
  CHECK_THROWS(sweep_sigma(c, std::vector<double>{0.1, 0.2}, 250.0, 1));
  CHECK_THROWS(sweep_sigma(c, std::vector<double>{0.1, 0.3, 0.2}, 250.0, 1));
  CHECK_THROWS(sweep_sigma(std::vector<GazeRecording>{}, std::vector<double>{0.1, 0.2, 0.3}, 250.0, 1));
}

TEST_CASE("inversion") {
  // Square-root shaped points like a real sweep.
  std::vector<CalibrationPoint> pts;
  for (int k = 1; k <= 15; ++k) {
    const double s2 = 0.02 * k;
    pts.push_back({s2, 0.27 * std::sqrt(s2)});
  }
  const auto curve = fit_curve(pts);
  const double resid = max_fit_residual(curve);
  CHECK(resid > 0.0);

  SUBCASE("desired = intercept gives zero") {
    CHECK(invert_curve(curve, curve.intercept).sigma0_sq == doctest::Approx(0.0).scale(1.0));
  }
  SUBCASE("grid points round trip") {
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const auto lin = invert_curve(curve, pts[k].mad_h, InverseMethod::linear);
      CHECK(std::fabs(curve.evaluate(lin.sigma0_sq) - curve.evaluate(pts[k].sigma0_sq)) <= 2 * resid + 1e-12);
      const auto mono = invert_curve(curve, pts[k].mad_h, InverseMethod::monotone);
      CHECK(mono.sigma0_sq == doctest::Approx(pts[k].sigma0_sq).epsilon(1e-12));
      CHECK_FALSE(mono.clamped);
    }
  }
  SUBCASE("between grid points the monotone inverse interpolates") {
    const double y = 0.5 * (pts[3].mad_h + pts[4].mad_h);
    CHECK(invert_curve(curve, y, InverseMethod::monotone).sigma0_sq ==
          doctest::Approx(0.5 * (pts[3].sigma0_sq + pts[4].sigma0_sq)));
  }
  SUBCASE("beyond the curve is clamped") {
    for (auto m : {InverseMethod::linear, InverseMethod::monotone}) {
      const auto hi = invert_curve(curve, 10.0, m);
      CHECK(hi.clamped);
      CHECK(hi.sigma0_sq == curve.max_sigma0_sq());
      const auto lo = invert_curve(curve, 0.0, m);
      CHECK(lo.sigma0_sq == 0.0);
    }
    CHECK_THROWS(invert_curve(curve, -1.0));
  }
  SUBCASE("non-increasing steps do not fold the inverse") {
    auto bumpy = pts;
    bumpy[5].mad_h = bumpy[4].mad_h - 0.001;
    const auto c2 = fit_curve(bumpy);
    double last = -1.0;
    for (double y = 0.02; y < 0.15; y += 0.001) {
      const double s = invert_curve(c2, y, InverseMethod::monotone).sigma0_sq;
      CHECK(s >= last);
      last = s;
    }
  }
  CHECK(parse_inverse_method("linear") == InverseMethod::linear);
  CHECK(parse_inverse_method("monotone") == InverseMethod::monotone);
  CHECK_THROWS(parse_inverse_method("spline"));
}
