#include "autonarm/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "autonarm/error.hpp"
#include "autonarm/rng.hpp"

namespace autonarm {

namespace {

MeanStd mean_std(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

}  // namespace

void OuterConfig::validate() const {
  if (outer_np < 4) throw InvalidArgument("outer population must be at least 4");
  if (outer_maxfes < outer_np) throw BudgetTooSmall("outer maxfes must be at least the outer population");
  if (runs < 1) throw InvalidArgument("at least one run is required");
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) { return derive_seed(base_seed, run_index); }

std::uint64_t evaluation_seed(std::uint64_t run_seed, std::size_t evaluation) {
  return derive_seed(run_seed, evaluation);
}

std::string preprocessing_label(const std::vector<PreprocessKind>& methods) {
  if (methods.empty()) return "none";
  std::string out;
  for (auto kind : methods) {
    if (!out.empty()) out += '+';
    out += to_string(kind);
  }
  return out;
}

RunReport search(const TransactionDatabase& db, const SearchConfig& config, const OuterConfig& outer,
                 std::size_t run_index) {
  config.validate();
  outer.validate();
  const auto started = std::chrono::steady_clock::now();

  RunReport report;
  report.run_index = run_index;
  report.run_seed = run_seed(outer.base_seed, run_index);

  std::size_t evaluation = 0;
  bool have_best = false;
  const Objective objective = [&](std::span<const double> genes) {
    const std::uint64_t seed = evaluation_seed(report.run_seed, evaluation);
    const PipelineGenotype genotype{{genes.begin(), genes.end()}};
    const auto result = evaluate_pipeline(genotype, db, config, seed);
    if (result.discarded) ++report.discarded;
    // Later pipelines of equal fitness take over the best slot.
    if (!result.discarded && (!have_best || result.fitness >= report.best_fitness)) {
      have_best = true;
      report.best_fitness = result.fitness;
      report.best_genotype = genotype;
      report.best_spec = *result.spec;
      report.best_evaluation = evaluation;
      report.best_evaluation_seed = seed;
    }
    ++evaluation;
    return result.fitness;
  };

  const OptimizerBudget budget{outer.outer_np, outer.outer_maxfes, derive_seed(report.run_seed, ~0ULL)};
  auto outcome = optimize(outer.outer_kind, objective, config.dimension(), budget, {}, outer.params);
  if (!have_best) throw AllDiscarded();

  report.evaluations = outcome.evaluations_used;
  report.fitness_trace = std::move(outcome.trace);

  // Re-create the best pipeline's archive for the report.
  const auto best = run_pipeline(report.best_spec, db, config, report.best_evaluation_seed);
  if (best.fitness != report.best_fitness) {
    throw std::logic_error("re-materialized pipeline does not reproduce its fitness");
  }
  report.rule_count = best.archive.size();
  report.mean_support = best.archive.mean_support;
  report.mean_confidence = best.archive.mean_confidence;

  std::vector<const ArchiveEntry*> ranked;
  ranked.reserve(best.archive.size());
  for (const auto& e : best.archive.entries) ranked.push_back(&e);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ArchiveEntry* a, const ArchiveEntry* b) { return a->fitness > b->fitness; });
  if (ranked.size() > outer.report_rules) ranked.resize(outer.report_rules);
  for (const auto* e : ranked) {
    report.top_rules.push_back({to_string(e->rule, *best.prepared), e->metrics, e->fitness});
  }

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void aggregate(AggregateReport& report) {
  const auto& runs = report.runs;
  const auto n = static_cast<double>(runs.size());
  std::vector<double> fitness, rules, nps, maxfes;
  for (const auto& r : runs) {
    fitness.push_back(r.best_fitness);
    rules.push_back(static_cast<double>(r.rule_count));
    nps.push_back(static_cast<double>(r.best_spec.np));
    maxfes.push_back(static_cast<double>(r.best_spec.maxfes));
  }
  report.best_fitness = mean_std(fitness);
  report.rule_count = mean_std(rules);
  report.np = mean_std(nps);
  report.maxfes = mean_std(maxfes);

  report.preprocessing_frequency.clear();
  report.preprocessing_combinations.clear();
  for (auto kind : report.search.preprocess_pool) report.preprocessing_frequency[std::string(to_string(kind))] = 0.0;
  report.preprocessing_frequency["none"] = 0.0;
  report.algorithm_frequency.clear();
  for (auto kind : report.search.algorithm_pool) report.algorithm_frequency[std::string(to_string(kind))] = 0.0;

  std::map<std::string, std::vector<double>> weights;
  for (auto kind : report.search.metric_pool) weights[std::string(to_string(kind))];

  for (const auto& r : runs) {
    const auto& spec = r.best_spec;
    const auto label = preprocessing_label(spec.preprocessing);
    ++report.preprocessing_combinations[label];
    if (spec.preprocessing.empty()) report.preprocessing_frequency["none"] += 1.0;
    for (auto kind : spec.preprocessing) report.preprocessing_frequency[std::string(to_string(kind))] += 1.0;
    report.algorithm_frequency[std::string(to_string(spec.algorithm))] += 1.0;
    for (const auto& m : spec.metrics) weights[std::string(to_string(m.kind))].push_back(m.weight);
  }
  if (n > 0) {
    for (auto& [_, f] : report.preprocessing_frequency) f /= n;
    for (auto& [_, f] : report.algorithm_frequency) f /= n;
  }

  report.metrics.clear();
  for (const auto& [name, ws] : weights) {
    MetricUsage usage;
    usage.used_in = ws.size();
    if (!ws.empty()) usage.weight = mean_std(ws);
    report.metrics[name] = usage;
  }
}

AggregateReport run_experiment(const TransactionDatabase& db, const SearchConfig& config, const OuterConfig& outer,
                               const std::string& dataset_name) {
  config.validate();
  outer.validate();

  AggregateReport report;
  report.dataset = {dataset_name, db.n_transactions(), db.n_attributes()};
  report.search = config;
  report.outer = outer;
  report.runs.resize(outer.runs);

  std::vector<std::exception_ptr> errors(outer.runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < outer.runs; i = next++) {
      try {
        report.runs[i] = search(db, config, outer, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(outer.jobs, 1, outer.runs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  aggregate(report);
  return report;
}

}  // namespace autonarm
