#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "autonarm/dataset.hpp"

namespace autonarm {

/// Preprocessing pool, in its fixed application order.
enum class PreprocessKind { MinMax, ZScore, Squash, RemoveCorrelated, KMeansDiscretize };

inline constexpr std::array<PreprocessKind, 5> kPreprocessPool = {
    PreprocessKind::MinMax, PreprocessKind::ZScore, PreprocessKind::Squash, PreprocessKind::RemoveCorrelated,
    PreprocessKind::KMeansDiscretize};

/// Short label: MM, ZS, DS, RHC, DK.
std::string_view to_string(PreprocessKind kind);
std::optional<PreprocessKind> parse_preprocess(std::string_view label);

struct PreprocessParams {
  double squash_ratio = 0.5;
  double correlation_threshold = 0.95;
  std::size_t discretize_k = 5;

  friend bool operator==(const PreprocessParams&, const PreprocessParams&) = default;
};

/// Rescales numeric attributes to [0, 1]; constant attributes become 0.
TransactionDatabase min_max(const TransactionDatabase& db);

/// Standardizes numeric attributes with the population deviation; zero deviation gives 0.
TransactionDatabase z_score(const TransactionDatabase& db);

/// Reduces the database to ceil(ratio * N) representative rows by k-means
/// over min-max normalized numeric features. Each representative is its
/// cluster's numeric mean with the per-cluster mode for categorical cells.
TransactionDatabase squash(const TransactionDatabase& db, double ratio, std::uint64_t seed = 0);

/// Drops the later attribute of every numeric pair with |pearson r| >= threshold.
TransactionDatabase remove_highly_correlated(const TransactionDatabase& db, double threshold);

/// Replaces each numeric value by the centroid of its one-dimensional k-means cluster.
TransactionDatabase kmeans_discretize(const TransactionDatabase& db, std::size_t k);

/// One-dimensional k-means with quantile seeding; returns per-value centroids.
std::vector<double> kmeans_1d(const std::vector<double>& values, std::size_t k, std::size_t max_iterations = 100);

/// Applies the selected methods in pool order.
TransactionDatabase apply_chain(const TransactionDatabase& db, const std::vector<PreprocessKind>& methods,
                                std::uint64_t seed, const PreprocessParams& params = {});

}  // namespace autonarm
