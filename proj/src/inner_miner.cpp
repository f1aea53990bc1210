#include "autonarm/inner_miner.hpp"

#include <unordered_set>

namespace autonarm {

RuleArchive mine(const TransactionDatabase& db, OptimizerKind kind, const OptimizerBudget& budget,
                 std::span<const WeightedMetric> selection, const OptimizerParams& params) {
  validate_selection(selection);

  // The objective leaves its last decode here for the observer, which runs
  // right after it on the same point.
  struct Decoded {
    std::optional<Rule> rule;
    MetricVector metrics;
  } last;

  const Objective objective = [&](std::span<const double> x) {
    last.rule = decode_rule(x, db);
    if (!last.rule) return kInvalidFitness;
    last.metrics = evaluate_metrics(*last.rule, db);
    return inner_fitness(last.metrics, selection);
  };

  RuleArchive archive;
  std::unordered_set<Rule, RuleHash> seen;
  const Observer observer = [&](std::span<const double>, double fitness) {
    if (!last.rule || !(fitness > 0.0)) return;
    if (!seen.insert(*last.rule).second) return;
    archive.entries.push_back({*last.rule, last.metrics, fitness});
  };

  const auto result = optimize(kind, objective, rule_dimension(db), budget, observer, params);
  archive.evaluations_used = result.evaluations_used;

  if (!archive.entries.empty()) {
    double support = 0.0, confidence = 0.0;
    for (const auto& e : archive.entries) {
      support += e.metrics[MetricKind::Support];
      confidence += e.metrics[MetricKind::Confidence];
    }
    const auto n = static_cast<double>(archive.entries.size());
    archive.mean_support = support / n;
    archive.mean_confidence = confidence / n;
  }
  return archive;
}

}  // namespace autonarm
