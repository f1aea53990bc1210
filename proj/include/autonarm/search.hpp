#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autonarm/dataset.hpp"
#include "autonarm/pipeline.hpp"

namespace autonarm {

/// Settings of the outer pipeline search and the multi-run protocol.
struct OuterConfig {
  OptimizerKind outer_kind = OptimizerKind::PSO;
  std::size_t outer_np = 30;
  std::size_t outer_maxfes = 1000;  // pipeline evaluations, discarded ones included
  std::size_t runs = 30;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;          // parallel runs; not part of the results
  std::size_t report_rules = 10;  // top rules of the best pipeline kept in each run report
  OptimizerParams params;

  void validate() const;

  friend bool operator==(const OuterConfig& a, const OuterConfig& b) {
    return a.outer_kind == b.outer_kind && a.outer_np == b.outer_np && a.outer_maxfes == b.outer_maxfes &&
           a.runs == b.runs && a.base_seed == b.base_seed && a.report_rules == b.report_rules && a.params == b.params;
  }
};

struct RuleRecord {
  std::string text;
  MetricVector metrics;
  double fitness;
  friend bool operator==(const RuleRecord&, const RuleRecord&) = default;
};

struct RunReport {
  std::size_t run_index = 0;
  std::uint64_t run_seed = 0;
  PipelineGenotype best_genotype;
  PipelineSpec best_spec;
  double best_fitness = kInvalidFitness;
  std::size_t best_evaluation = 0;          // outer evaluation index that produced the best
  std::uint64_t best_evaluation_seed = 0;   // seed that re-creates the best pipeline's archive
  std::size_t rule_count = 0;
  double mean_support = 0.0;
  double mean_confidence = 0.0;
  std::size_t evaluations = 0;
  std::size_t discarded = 0;
  std::vector<TracePoint> fitness_trace;  // strict improvements of the best
  std::vector<RuleRecord> top_rules;
  double wall_time = 0.0;  // seconds; excluded from equality

  friend bool operator==(const RunReport& a, const RunReport& b) {
    return a.run_index == b.run_index && a.run_seed == b.run_seed && a.best_genotype == b.best_genotype &&
           a.best_spec == b.best_spec && a.best_fitness == b.best_fitness && a.best_evaluation == b.best_evaluation &&
           a.best_evaluation_seed == b.best_evaluation_seed && a.rule_count == b.rule_count &&
           a.mean_support == b.mean_support && a.mean_confidence == b.mean_confidence &&
           a.evaluations == b.evaluations && a.discarded == b.discarded && a.fitness_trace == b.fitness_trace &&
           a.top_rules == b.top_rules;
  }
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population deviation
  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

struct MetricUsage {
  std::size_t used_in = 0;          // number of best pipelines using the metric
  std::optional<MeanStd> weight;    // over those pipelines; absent when unused
  friend bool operator==(const MetricUsage&, const MetricUsage&) = default;
};

struct DatasetInfo {
  std::string name;
  std::size_t transactions = 0;
  std::size_t attributes = 0;
  friend bool operator==(const DatasetInfo&, const DatasetInfo&) = default;
};

/// Per-experiment statistics over the best pipeline of each run.
struct AggregateReport {
  DatasetInfo dataset;
  SearchConfig search;
  OuterConfig outer;
  std::vector<RunReport> runs;

  MeanStd best_fitness;
  MeanStd rule_count;
  MeanStd np;
  MeanStd maxfes;
  /// Fraction of runs whose best pipeline applies each method; "none" counts
  /// pipelines without preprocessing.
  std::map<std::string, double> preprocessing_frequency;
  std::map<std::string, double> algorithm_frequency;
  std::map<std::string, MetricUsage> metrics;
  /// Runs per exact preprocessing combination, e.g. "MM+RHC" or "none".
  std::map<std::string, std::size_t> preprocessing_combinations;

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

/// Seed of run `run_index`.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index);
/// Seed of the pipeline evaluated at outer evaluation `evaluation`.
std::uint64_t evaluation_seed(std::uint64_t run_seed, std::size_t evaluation);

/// One outer search. Throws AllDiscarded when no evaluated pipeline produced rules.
RunReport search(const TransactionDatabase& db, const SearchConfig& config, const OuterConfig& outer,
                 std::size_t run_index);

/// `outer.runs` independent searches, aggregated.
AggregateReport run_experiment(const TransactionDatabase& db, const SearchConfig& config, const OuterConfig& outer,
                               const std::string& dataset_name = "");

/// Recomputes the summary statistics of `report` from its runs.
void aggregate(AggregateReport& report);

/// "MM+RHC", or "none" for the empty chain.
std::string preprocessing_label(const std::vector<PreprocessKind>& methods);

}  // namespace autonarm
