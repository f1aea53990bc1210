#pragma once

#include <span>
#include <vector>

#include "autonarm/dataset.hpp"
#include "autonarm/metrics.hpp"
#include "autonarm/optimizers.hpp"
#include "autonarm/rules.hpp"

namespace autonarm {

struct ArchiveEntry {
  Rule rule;
  MetricVector metrics;
  double fitness;
};

/// Distinct rules with positive inner fitness, in discovery order.
struct RuleArchive {
  std::vector<ArchiveEntry> entries;
  double mean_support = 0.0;
  double mean_confidence = 0.0;
  std::size_t evaluations_used = 0;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
};

/// One inner rule-mining run: maximizes the weighted metric fitness of
/// decoded rules and archives every distinct rule with positive fitness.
RuleArchive mine(const TransactionDatabase& db, OptimizerKind kind, const OptimizerBudget& budget,
                 std::span<const WeightedMetric> selection, const OptimizerParams& params = {});

}  // namespace autonarm
