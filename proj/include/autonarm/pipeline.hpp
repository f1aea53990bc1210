#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "autonarm/dataset.hpp"
#include "autonarm/inner_miner.hpp"
#include "autonarm/metrics.hpp"
#include "autonarm/optimizers.hpp"
#include "autonarm/preprocess.hpp"

namespace autonarm {

/// Smallest metric weight a pipeline may carry.
inline constexpr double kMinMetricWeight = 1e-6;

struct CountRange {
  std::size_t lo;
  std::size_t hi;
  friend bool operator==(const CountRange&, const CountRange&) = default;
};

/// The space of pipelines and the surrogate fitness weights.
struct SearchConfig {
  std::vector<OptimizerKind> algorithm_pool{kOptimizerPool.begin(), kOptimizerPool.end()};
  std::vector<PreprocessKind> preprocess_pool{kPreprocessPool.begin(), kPreprocessPool.end()};
  std::vector<MetricKind> metric_pool{kMetricPool.begin(), kMetricPool.end()};
  CountRange np_range{10, 30};
  CountRange maxfes_range{2000, 10000};
  bool weight_adaptation = false;
  double alpha = 1.0;
  double beta = 1.0;
  /// Upper bound on the number of preprocessing methods a pipeline applies;
  /// the methods with the largest selection genes win.
  std::size_t max_preprocess = kPreprocessPool.size();
  PreprocessParams preprocess;
  OptimizerParams inner_params;

  /// Genotype length: 1 + 2 + P + 2M.
  std::size_t dimension() const noexcept { return 3 + preprocess_pool.size() + 2 * metric_pool.size(); }

  /// Throws InvalidArgument on a violated invariant.
  void validate() const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// Genes laid out as (algorithm | np, maxfes | p_1..p_P | z_1..z_M | w_1..w_M).
struct PipelineGenotype {
  std::vector<double> genes;
  friend bool operator==(const PipelineGenotype&, const PipelineGenotype&) = default;
};

/// A decoded pipeline.
struct PipelineSpec {
  OptimizerKind algorithm = OptimizerKind::PSO;
  std::size_t np = 0;
  std::size_t maxfes = 0;
  std::vector<PreprocessKind> preprocessing;  // pool order
  std::vector<WeightedMetric> metrics;        // pool order, non-empty

  friend bool operator==(const PipelineSpec&, const PipelineSpec&) = default;
};

struct PipelineResult {
  std::optional<PipelineSpec> spec;                // absent when decoding failed
  std::optional<TransactionDatabase> prepared;     // database the rules refer to
  RuleArchive archive;
  double fitness = kInvalidFitness;
  bool discarded = true;
};

/// min(floor(x * pool_size), pool_size - 1)
std::size_t map_scalar_to_pool(double x, std::size_t pool_size);

/// lo + y * (hi - lo), rounded half up.
std::size_t map_hyperparam(double y, std::size_t lo, std::size_t hi);

/// Returns nullopt when no metric is selected. Throws DimensionMismatch.
std::optional<PipelineSpec> decode_pipeline(const PipelineGenotype& genotype, const SearchConfig& config);

/// (alpha * mean_support + beta * mean_confidence) / (alpha + beta)
double surrogate_fitness(double mean_support, double mean_confidence, double alpha, double beta);

/// Surrogate fitness of a mined archive; kInvalidFitness when it is empty.
double pipeline_fitness(const RuleArchive& archive, double alpha, double beta);

/// Preprocesses and mines with a decoded spec. The seed feeds both stages
/// through derived streams.
PipelineResult run_pipeline(const PipelineSpec& spec, const TransactionDatabase& db, const SearchConfig& config,
                            std::uint64_t seed);

/// Decodes, runs and scores a genotype. Undecodable genotypes and empty
/// archives are discarded with fitness kInvalidFitness.
PipelineResult evaluate_pipeline(const PipelineGenotype& genotype, const TransactionDatabase& db,
                                 const SearchConfig& config, std::uint64_t seed);

}  // namespace autonarm
