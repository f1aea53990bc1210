#include "autonarm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "autonarm/error.hpp"
#include "autonarm/rng.hpp"

namespace autonarm {

void SearchConfig::validate() const {
  if (algorithm_pool.empty()) throw InvalidArgument("algorithm pool is empty");
  if (metric_pool.empty()) throw InvalidArgument("metric pool is empty");
  if (np_range.lo > np_range.hi) throw InvalidArgument("np range is not ordered");
  if (maxfes_range.lo > maxfes_range.hi) throw InvalidArgument("maxfes range is not ordered");
  if (np_range.lo < 4) throw InvalidArgument("np range must start at 4 or more");
  if (maxfes_range.lo < np_range.hi) throw InvalidArgument("maxfes range must cover the largest np");
  if (!(alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidArgument("alpha and beta must be non-negative with a positive sum");
  }
  auto unique = [](auto pool) {
    std::sort(pool.begin(), pool.end());
    return std::adjacent_find(pool.begin(), pool.end()) == pool.end();
  };
  if (!unique(algorithm_pool) || !unique(preprocess_pool) || !unique(metric_pool)) {
    throw InvalidArgument("pools must not repeat members");
  }
}

std::size_t map_scalar_to_pool(double x, std::size_t pool_size) {
  if (pool_size == 0) throw InvalidArgument("pool is empty");
  const double scaled = std::floor(std::clamp(x, 0.0, 1.0) * static_cast<double>(pool_size));
  return std::min(static_cast<std::size_t>(scaled), pool_size - 1);
}

std::size_t map_hyperparam(double y, std::size_t lo, std::size_t hi) {
  if (lo > hi) throw InvalidArgument("hyper-parameter range is not ordered");
  const double v = static_cast<double>(lo) + std::clamp(y, 0.0, 1.0) * static_cast<double>(hi - lo);
  return std::clamp(static_cast<std::size_t>(std::floor(v + 0.5)), lo, hi);
}

std::optional<PipelineSpec> decode_pipeline(const PipelineGenotype& genotype, const SearchConfig& config) {
  const auto& g = genotype.genes;
  if (g.size() != config.dimension()) throw DimensionMismatch(g.size(), config.dimension());

  const std::size_t prep_count = config.preprocess_pool.size();
  const std::size_t metric_count = config.metric_pool.size();
  const std::size_t prep_at = 3;
  const std::size_t metric_at = prep_at + prep_count;
  const std::size_t weight_at = metric_at + metric_count;

  PipelineSpec spec;
  spec.algorithm = config.algorithm_pool[map_scalar_to_pool(g[0], config.algorithm_pool.size())];
  spec.np = map_hyperparam(g[1], config.np_range.lo, config.np_range.hi);
  spec.maxfes = map_hyperparam(g[2], config.maxfes_range.lo, config.maxfes_range.hi);

  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < prep_count; ++j) {
    if (g[prep_at + j] > 0.5) chosen.push_back(j);
  }
  if (chosen.size() > config.max_preprocess) {
    std::stable_sort(chosen.begin(), chosen.end(),
                     [&](std::size_t a, std::size_t b) { return g[prep_at + a] > g[prep_at + b]; });
    chosen.resize(config.max_preprocess);
  }
  for (auto kind : kPreprocessPool) {
    for (auto j : chosen) {
      if (config.preprocess_pool[j] == kind) spec.preprocessing.push_back(kind);
    }
  }

  for (auto kind : kMetricPool) {
    for (std::size_t j = 0; j < metric_count; ++j) {
      if (config.metric_pool[j] != kind || !(g[metric_at + j] > 0.5)) continue;
      const double weight = config.weight_adaptation ? std::clamp(g[weight_at + j], kMinMetricWeight, 1.0) : 1.0;
      spec.metrics.push_back({kind, weight});
    }
  }
  if (spec.metrics.empty()) return std::nullopt;
  return spec;
}

double surrogate_fitness(double mean_support, double mean_confidence, double alpha, double beta) {
  return (alpha * mean_support + beta * mean_confidence) / (alpha + beta);
}

double pipeline_fitness(const RuleArchive& archive, double alpha, double beta) {
  if (archive.empty()) return kInvalidFitness;
  return surrogate_fitness(archive.mean_support, archive.mean_confidence, alpha, beta);
}

PipelineResult run_pipeline(const PipelineSpec& spec, const TransactionDatabase& db, const SearchConfig& config,
                            std::uint64_t seed) {
  PipelineResult result;
  result.spec = spec;
  result.prepared = apply_chain(db, spec.preprocessing, derive_seed(seed, 1), config.preprocess);
  const OptimizerBudget budget{spec.np, spec.maxfes, derive_seed(seed, 2)};
  result.archive = mine(*result.prepared, spec.algorithm, budget, spec.metrics, config.inner_params);
  result.fitness = pipeline_fitness(result.archive, config.alpha, config.beta);
  result.discarded = result.archive.empty();
  return result;
}

PipelineResult evaluate_pipeline(const PipelineGenotype& genotype, const TransactionDatabase& db,
                                 const SearchConfig& config, std::uint64_t seed) {
  auto spec = decode_pipeline(genotype, config);
  if (!spec) return {};
  return run_pipeline(*spec, db, config, seed);
}

}  // namespace autonarm
