#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gazesynth/assess.hpp"
#include "gazesynth/stats.hpp"

using namespace gazesynth;

namespace {

FeatureRow filled(double v) {
  FeatureRow r;
  r.fill(v);
  return r;
}

QualityVector qv_from(const FeatureRow& r) {
  QualityVector q;
  q.acc_h = r[0];
  q.acc_v = r[1];
  q.acc_c = r[2];
  q.prec_h = r[3];
  q.prec_v = r[4];
  q.prec_c = r[5];
  q.temporal_prec_ms = r[6];
  return q;
}

std::vector<QualityVector> gaussian_set(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<QualityVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureRow r;
    for (auto& v : r) v = g(rng);
    out.push_back(qv_from(r));
  }
  return out;
}

// Brute-force 1-NN with the same tie rule, written independently.
double reference_combined(const std::vector<FeatureRow>& a, const std::vector<FeatureRow>& b) {
  std::vector<FeatureRow> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      double d = 0;
      for (std::size_t c = 0; c < kFeatureCount; ++c) d += std::pow(all[i][c] - all[j][c], 2);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    correct += ((i < a.size()) == (best < a.size()));
  }
  return static_cast<double>(correct) / static_cast<double>(all.size());
}

}  // namespace

TEST_CASE("feature order") {
  QualityVector q{1, 2, 3, 4, 5, 6, 7, 40};
  const auto r = to_features(q);
  for (std::size_t c = 0; c < kFeatureCount; ++c) CHECK(r[c] == static_cast<double>(c + 1));
  CHECK(std::string(feature_names()[6]) == "temporal_prec_ms");
}

TEST_CASE("standardization") {
  SUBCASE("needs two rows") {
    CHECK_THROWS(fit_standardizer(std::vector<FeatureRow>{filled(1)}));
    CHECK_THROWS(feature_matrix(std::vector<QualityVector>{QualityVector{}}));
  }
  SUBCASE("identical vectors: zeros and warnings") {
    const std::vector<QualityVector> two{qv_from(filled(2)), qv_from(filled(2))};
    const auto m = feature_matrix(two);
    for (const auto& r : m.rows)
      for (double v : r) CHECK(v == 0.0);
    CHECK(m.warnings.size() == kFeatureCount);
  }
  SUBCASE("pooled columns have zero mean") {
    std::mt19937_64 rng(2);
    auto a = gaussian_set(30, rng);
    auto b = gaussian_set(20, rng);
    for (auto& q : b) q.prec_c += 5.0;
    auto [ma, mb] = pooled_feature_matrices(a, b);
    for (std::size_t c = 0; c < kFeatureCount; ++c) {
      double sum = 0, sq = 0;
      for (const auto& r : ma.rows) sum += r[c], sq += r[c] * r[c];
      for (const auto& r : mb.rows) sum += r[c], sq += r[c] * r[c];
      CHECK(std::fabs(sum / 50.0) < 1e-12);
      CHECK(sq / 50.0 == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("1-NN harness") {
  SUBCASE("separated clusters") {
    std::vector<FeatureRow> real(5, filled(0)), synth(5, filled(10));
    // general position inside each cluster
    for (std::size_t i = 0; i < 5; ++i) real[i][0] += 0.1 * i, synth[i][1] += 0.1 * i;
    const auto r = one_nn_two_sample(real, synth);
    CHECK(r.combined_accuracy == 1.0);
    CHECK(r.real_accuracy == 1.0);
    CHECK(r.synthetic_accuracy == 1.0);
  }
  SUBCASE("exact copies") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<FeatureRow> real(20);
    for (auto& r : real)
      for (auto& v : r) v = g(rng);
    const auto r = one_nn_two_sample(real, real);
    CHECK(r.combined_accuracy == 0.0);
  }
  SUBCASE("matches a brute-force reference") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<FeatureRow> a(40), b(40);
    for (auto& r : a)
      for (auto& v : r) v = g(rng);
    for (auto& r : b)
      for (auto& v : r) v = 0.5 + g(rng);
    CHECK(one_nn_two_sample(a, b).combined_accuracy == doctest::Approx(reference_combined(a, b)));
  }
  SUBCASE("ties go to the lowest pooled index") {
    // Point 0 (real) is equidistant from point 1 (real) and point 2 (synth).
    std::vector<FeatureRow> real{filled(0), filled(1)};
    std::vector<FeatureRow> synth{filled(-1), filled(50)};
    const auto r = one_nn_two_sample(real, synth);
    // 0 -> 1 (real, correct); 1 -> 0 (correct); 2 -> 0 (wrong); 3 -> 1 (wrong)
    CHECK(r.real_accuracy == 1.0);
    CHECK(r.synthetic_accuracy == 0.0);
  }
  CHECK_THROWS(one_nn_two_sample(std::vector<FeatureRow>(3), std::vector<FeatureRow>(4)));
}

TEST_CASE("iid sets sit at chance") {
  int inside = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    std::mt19937_64 rng(1000 + s);
    const auto real = gaussian_set(200, rng);
    const auto synth = gaussian_set(200, rng);
    const auto r = repeated_assessment(real, synth, 5, s);
    inside += (r.combined_accuracy >= 0.4 && r.combined_accuracy <= 0.6);
  }
  CHECK(inside >= 4);
}

TEST_CASE("repeated assessment") {
  std::mt19937_64 rng(5);
  const auto real = gaussian_set(60, rng);
  const auto synth = gaussian_set(60, rng);
  SUBCASE("equal sizes: every repeat identical") {
    const auto r = repeated_assessment(real, synth, 5, 1);
    CHECK(r.repeats.size() == 5);
    CHECK(r.combined_range == 0.0);
    for (const auto& rep : r.repeats) CHECK(rep.combined == r.repeats[0].combined);
  }
  SUBCASE("subsampling is seeded") {
    const std::vector<QualityVector> small(synth.begin(), synth.begin() + 20);
    const auto a = repeated_assessment(real, small, 5, 9);
    const auto b = repeated_assessment(real, small, 5, 9);
    CHECK(a.combined_accuracy == b.combined_accuracy);
    CHECK(a.combined_range == b.combined_range);
    CHECK(a.n_per_class == 20);
    std::vector<double> comb;
    for (const auto& rep : a.repeats) comb.push_back(rep.combined);
    CHECK(a.combined_accuracy == stats::median(comb));
  }
  CHECK_THROWS(repeated_assessment(std::vector<QualityVector>(real.begin(), real.begin() + 10), synth, 5, 1));
  CHECK_THROWS(repeated_assessment(real, synth, 0, 1));
}

TEST_CASE("distribution summary") {
  std::vector<QualityVector> c(7, qv_from(filled(3.5)));
  for (const auto& s : distribution_summary(c)) {
    CHECK(s.min == 3.5);
    CHECK(s.max == 3.5);
    CHECK(s.median == 3.5);
    for (double d : s.deciles) CHECK(d == 3.5);
  }
  std::vector<QualityVector> ramp;
  for (int v = 10; v >= 1; --v) ramp.push_back(qv_from(filled(v)));
  const auto s = distribution_summary(ramp);
  CHECK(s[0].median == 5.5);
  CHECK(s[0].mean == 5.5);
  for (int d = 1; d <= 9; ++d) CHECK(s[0].deciles[d - 1] == doctest::Approx(1.0 + 0.9 * d));
  CHECK(s[6].feature == "temporal_prec_ms");
}
