#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "gazesynth/stats.hpp"
#include "helpers.hpp"

using namespace gazesynth::stats;

TEST_CASE("quantile uses the (n-1)p rule") {
  CHECK(quantile(std::vector<double>{1, 2, 3, 4, 5}, 0.5) == 3.0);
  CHECK(quantile(std::vector<double>{10, 20}, 0.25) == doctest::Approx(12.5));
  CHECK(quantile(std::vector<double>{5, 1, 3}, 0.0) == 1.0);
  CHECK(quantile(std::vector<double>{5, 1, 3}, 1.0) == 5.0);
  CHECK(quantile(std::vector<double>{7}, 0.3) == 7.0);
  CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile(std::vector<double>{1, 2}, 1.5), std::invalid_argument);
}

TEST_CASE("deciles of 1..10") {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(quantile(v, 0.5) == doctest::Approx(5.5));
  for (int d = 1; d <= 9; ++d) {
    // position (n-1)p = 0.9 d from the first element
    CHECK(quantile(v, d / 10.0) == doctest::Approx(1.0 + 0.9 * d));
  }
}

TEST_CASE("percentile_rank") {
  CHECK(percentile_rank(3, std::vector<double>{1, 2, 3, 4, 5}) == 0.5);
  CHECK(percentile_rank(0, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(percentile_rank(9, std::vector<double>{1, 2, 3}) == 1.0);
  CHECK(percentile_rank(1.5, std::vector<double>{1, 2}) == doctest::Approx(0.5));
  CHECK(percentile_rank(4, std::vector<double>{4}) == 0.5);
}

TEST_CASE("quantile inverts percentile_rank on the support") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> s(57);
  for (auto& x : s) x = n(rng);
  const double lo = *std::min_element(s.begin(), s.end());
  const double hi = *std::max_element(s.begin(), s.end());
  std::uniform_real_distribution<double> u(lo, hi);
  for (int k = 0; k < 200; ++k) {
    const double v = u(rng);
    CHECK(quantile(s, percentile_rank(v, s)) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("percentile_rank_tied spreads a tied block") {
  const std::vector<double> zeros(11, 0.0);
  CHECK(percentile_rank_tied(0.0, zeros, 0.0) == 0.0);
  CHECK(percentile_rank_tied(0.0, zeros, 1.0) == 1.0);
  CHECK(percentile_rank_tied(0.0, zeros, 0.3) == doctest::Approx(0.3));
  // No ties: identical to percentile_rank.
  const std::vector<double> s{1, 2, 3, 4};
  CHECK(percentile_rank_tied(2.5, s, 0.9) == percentile_rank(2.5, s));
  // Block of three 2s at sorted positions 1..3 out of 0..4.
  const std::vector<double> t{2, 1, 2, 5, 2};
  CHECK(percentile_rank_tied(2.0, t, 0.5) == doctest::Approx(2.0 / 4.0));
}

TEST_CASE("median, MAD, population std") {
  CHECK(median(std::vector<double>{3, 1, 2}) == 2.0);
  CHECK(median(std::vector<double>{4, 1, 2, 3}) == 2.5);
  CHECK(median_absolute_deviation(std::vector<double>{0, 1, 2}) == 1.0);
  CHECK(median_absolute_deviation(std::vector<double>{5, 5, 5}) == 0.0);
  CHECK(population_std(std::vector<double>{3, 5, 4}) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(mean(std::vector<double>{1, 2, 3, 6}) == 3.0);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(2.0, 3.0);
  std::vector<double> v(1001);
  for (auto& x : v) x = n(rng);
  CHECK(median(v) == doctest::Approx(testutil::ref_median(v)));
  CHECK(population_std(v) == doctest::Approx(testutil::ref_std(v)));
  std::vector<double> dev;
  const double m = testutil::ref_median(v);
  for (double x : v) dev.push_back(std::fabs(x - m));
  CHECK(median_absolute_deviation(v) == doctest::Approx(testutil::ref_median(dev)));
}

TEST_CASE("MAD of a Gaussian is 0.6745 sigma") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.2);
  std::vector<double> v(200000);
  for (auto& x : v) x = n(rng);
  CHECK(median_absolute_deviation(v) == doctest::Approx(0.6745 * 0.2).epsilon(0.01));
}

TEST_CASE("least squares") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const auto fit = least_squares(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.max_abs_residual == doctest::Approx(0.0).epsilon(1e-12));

  // y = x^2 on {0,1,2}: slope 2, intercept -1/3, residuals 1/3, -2/3, 1/3
  const auto q = least_squares(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 4});
  CHECK(q.slope == doctest::Approx(2.0));
  CHECK(q.intercept == doctest::Approx(-1.0 / 3.0));
  CHECK(q.max_abs_residual == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS(least_squares(std::vector<double>{1, 1}, std::vector<double>{0, 1}));
}
