#include "gazesynth/assess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gazesynth/seeding.hpp"
#include "gazesynth/stats.hpp"

namespace gazesynth {

const std::array<const char*, kFeatureCount>& feature_names() {
  static const std::array<const char*, kFeatureCount> names{"acc_h",  "acc_v",  "acc_c",           "prec_h",
                                                            "prec_v", "prec_c", "temporal_prec_ms"};
  return names;
}

FeatureRow to_features(const QualityVector& q) {
  return {q.acc_h, q.acc_v, q.acc_c, q.prec_h, q.prec_v, q.prec_c, q.temporal_prec_ms};
}

FeatureRow Standardizer::apply(const FeatureRow& row) const {
  FeatureRow out{};
  for (std::size_t c = 0; c < kFeatureCount; ++c) out[c] = (row[c] - mean[c]) / scale[c];
  return out;
}

Standardizer fit_standardizer(std::span<const FeatureRow> rows, std::vector<std::string>* warnings) {
  if (rows.size() < 2) throw std::invalid_argument("standardizer needs >= 2 rows");
  Standardizer s;
  std::vector<double> column(rows.size());
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][c];
    s.mean[c] = stats::mean(column);
    const double sd = stats::population_std(column);
    if (sd > 0.0) {
      s.scale[c] = sd;
    } else {
      s.scale[c] = 1.0;
      if (warnings) warnings->push_back(std::string("zero-variance feature ") + feature_names()[c] + " left unscaled");
    }
  }
  return s;
}

FeatureMatrix feature_matrix(std::span<const QualityVector> qvs, const std::optional<Standardizer>& standardizer) {
  if (qvs.empty()) throw std::invalid_argument("feature matrix needs at least one vector");
  std::vector<FeatureRow> raw;
  raw.reserve(qvs.size());
  for (const auto& q : qvs) raw.push_back(to_features(q));
  FeatureMatrix m;
  m.standardizer = standardizer ? *standardizer : fit_standardizer(raw, &m.warnings);
  for (const auto& r : raw) m.rows.push_back(m.standardizer.apply(r));
  return m;
}

std::pair<FeatureMatrix, FeatureMatrix> pooled_feature_matrices(std::span<const QualityVector> a,
                                                                std::span<const QualityVector> b) {
  std::vector<QualityVector> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::string> warnings;
  std::vector<FeatureRow> raw;
  for (const auto& q : pooled) raw.push_back(to_features(q));
  const Standardizer s = fit_standardizer(raw, &warnings);
  FeatureMatrix ma = feature_matrix(a, s);
  FeatureMatrix mb = feature_matrix(b, s);
  ma.warnings = warnings;
  mb.warnings = warnings;
  return {std::move(ma), std::move(mb)};
}

namespace {

double squared_distance(const FeatureRow& a, const FeatureRow& b) {
  double d = 0.0;
  for (std::size_t c = 0; c < kFeatureCount; ++c) d += (a[c] - b[c]) * (a[c] - b[c]);
  return d;
}

double median_of(const std::vector<TwoSampleRepeat>& reps, double TwoSampleRepeat::*field) {
  std::vector<double> v;
  for (const auto& r : reps) v.push_back(r.*field);
  return stats::median(v);
}

double range_of(const std::vector<TwoSampleRepeat>& reps, double TwoSampleRepeat::*field) {
  auto [lo, hi] = std::minmax_element(reps.begin(), reps.end(),
                                      [&](const auto& x, const auto& y) { return x.*field < y.*field; });
  return (*hi).*field - (*lo).*field;
}

TwoSampleResult aggregate(std::vector<TwoSampleRepeat> reps, std::size_t n, std::uint64_t seed) {
  TwoSampleResult r;
  r.combined_accuracy = median_of(reps, &TwoSampleRepeat::combined);
  r.real_accuracy = median_of(reps, &TwoSampleRepeat::real);
  r.synthetic_accuracy = median_of(reps, &TwoSampleRepeat::synthetic);
  r.combined_range = range_of(reps, &TwoSampleRepeat::combined);
  r.real_range = range_of(reps, &TwoSampleRepeat::real);
  r.synthetic_range = range_of(reps, &TwoSampleRepeat::synthetic);
  r.repeats = std::move(reps);
  r.n_per_class = n;
  r.seed = seed;
  return r;
}

}  // namespace

TwoSampleResult one_nn_two_sample(std::span<const FeatureRow> real, std::span<const FeatureRow> synth,
                                  std::uint64_t seed) {
  if (real.size() != synth.size()) {
    throw std::invalid_argument("1-NN test needs equal class sizes (" + std::to_string(real.size()) + " vs " +
                                std::to_string(synth.size()) + ")");
  }
  const std::size_t n = real.size();
  if (n < 2) throw std::invalid_argument("1-NN test needs >= 2 rows per class");

  std::vector<FeatureRow> pooled(real.begin(), real.end());
  pooled.insert(pooled.end(), synth.begin(), synth.end());
  const std::size_t total = pooled.size();

  std::size_t real_correct = 0;
  std::size_t synth_correct = 0;
  for (std::size_t i = 0; i < total; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (j == i) continue;
      const double d = squared_distance(pooled[i], pooled[j]);
      if (d < best) {  // strict: earlier index wins ties
        best = d;
        best_j = j;
      }
    }
    const bool is_real = i < n;
    const bool predicted_real = best_j < n;
    if (is_real && predicted_real) ++real_correct;
    if (!is_real && !predicted_real) ++synth_correct;
  }
  TwoSampleRepeat rep;
  rep.real = static_cast<double>(real_correct) / static_cast<double>(n);
  rep.synthetic = static_cast<double>(synth_correct) / static_cast<double>(n);
  rep.combined = static_cast<double>(real_correct + synth_correct) / static_cast<double>(total);
  rep.seed = seed;
  return aggregate({rep}, n, seed);
}

TwoSampleResult repeated_assessment(std::span<const QualityVector> real, std::span<const QualityVector> synth,
                                    std::size_t repeats, std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (synth.size() < 2) throw std::invalid_argument("synthetic set needs >= 2 vectors");
  if (real.size() < synth.size()) {
    throw std::invalid_argument("real set (" + std::to_string(real.size()) + ") smaller than synthetic set (" +
                                std::to_string(synth.size()) + ")");
  }
  const std::size_t n = synth.size();
  std::vector<TwoSampleRepeat> reps;
  for (std::size_t r = 0; r < repeats; ++r) {
    const std::uint64_t rep_seed = derive_seed(seed, r, "assess");
    std::vector<std::size_t> order(real.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<QualityVector> subset;
    if (real.size() == n) {
      subset.assign(real.begin(), real.end());
    } else {
      std::mt19937_64 rng(rep_seed);
      // Partial Fisher-Yates; the drawn rows keep their original order.
      for (std::size_t k = 0; k < n; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, order.size() - 1);
        std::swap(order[k], order[pick(rng)]);
      }
      order.resize(n);
      std::sort(order.begin(), order.end());
      for (std::size_t idx : order) subset.push_back(real[idx]);
    }
    auto [mr, ms] = pooled_feature_matrices(subset, synth);
    TwoSampleRepeat rep = one_nn_two_sample(mr.rows, ms.rows, rep_seed).repeats.front();
    reps.push_back(rep);
  }
  return aggregate(std::move(reps), n, seed);
}

std::vector<FeatureSummary> distribution_summary(std::span<const QualityVector> qvs) {
  if (qvs.empty()) throw std::invalid_argument("distribution summary needs at least one vector");
  std::vector<FeatureSummary> out;
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    std::vector<double> v;
    for (const auto& q : qvs) v.push_back(to_features(q)[c]);
    std::sort(v.begin(), v.end());
    FeatureSummary s;
    s.feature = feature_names()[c];
    s.min = v.front();
    s.max = v.back();
    for (std::size_t d = 0; d < 9; ++d) s.deciles[d] = stats::quantile_sorted(v, static_cast<double>(d + 1) / 10.0);
    s.median = stats::quantile_sorted(v, 0.5);
    s.mean = stats::mean(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gazesynth
