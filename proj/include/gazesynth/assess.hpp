#pragma once

// Realism assessment of a synthetic corpus against a real one.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazesynth/recording.hpp"

namespace gazesynth {

inline constexpr std::size_t kFeatureCount = 7;
using FeatureRow = std::array<double, kFeatureCount>;

/// acc_h, acc_v, acc_c, prec_h, prec_v, prec_c, temporal_prec_ms.
const std::array<const char*, kFeatureCount>& feature_names();
FeatureRow to_features(const QualityVector& q);

struct Standardizer {
  FeatureRow mean{};
  FeatureRow scale{};  // 1 for zero-variance columns

  FeatureRow apply(const FeatureRow& row) const;
};

/// Fits per-column mean and population std over all rows. Zero-variance
/// columns are centred but not scaled, and reported in warnings.
Standardizer fit_standardizer(std::span<const FeatureRow> rows, std::vector<std::string>* warnings = nullptr);

struct FeatureMatrix {
  std::vector<FeatureRow> rows;
  Standardizer standardizer;
  std::vector<std::string> warnings;
};

/// Standardises qvs with the given standardizer, or fits one on qvs itself
/// (needs >= 2 rows).
FeatureMatrix feature_matrix(std::span<const QualityVector> qvs, const std::optional<Standardizer>& standardizer = {});

/// Standardises the union of two sets with pooled statistics and splits the
/// result back.
std::pair<FeatureMatrix, FeatureMatrix> pooled_feature_matrices(std::span<const QualityVector> a,
                                                                std::span<const QualityVector> b);

struct TwoSampleRepeat {
  double combined = 0.0;
  double real = 0.0;
  double synthetic = 0.0;
  std::uint64_t seed = 0;
};

struct TwoSampleResult {
  /// Medians across repeats (the single value for one repeat).
  double combined_accuracy = 0.0;
  double real_accuracy = 0.0;
  double synthetic_accuracy = 0.0;
  /// max - min across repeats.
  double combined_range = 0.0;
  double real_range = 0.0;
  double synthetic_range = 0.0;
  std::vector<TwoSampleRepeat> repeats;
  std::size_t n_per_class = 0;
  std::uint64_t seed = 0;
};

/// Leave-one-out 1-NN over the 2n pooled rows (real first, then synthetic).
/// Each row takes the label of its nearest Euclidean neighbour among the
/// other rows; ties go to the lowest pooled index.
TwoSampleResult one_nn_two_sample(std::span<const FeatureRow> real, std::span<const FeatureRow> synth,
                                  std::uint64_t seed = 0);

/// Per repeat r: draw |synth| real vectors without replacement using
/// derive_seed(seed, r, "assess"), standardise pooled, run the 1-NN test.
TwoSampleResult repeated_assessment(std::span<const QualityVector> real, std::span<const QualityVector> synth,
                                    std::size_t repeats = 5, std::uint64_t seed = 0);

struct FeatureSummary {
  std::string feature;
  double min = 0.0;
  std::array<double, 9> deciles{};  // d10 ... d90
  double median = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

std::vector<FeatureSummary> distribution_summary(std::span<const QualityVector> qvs);

}  // namespace gazesynth
