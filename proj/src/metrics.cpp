#include "autonarm/metrics.hpp"

#include <cmath>
#include <string>

#include "autonarm/error.hpp"

namespace autonarm {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Support: return "Supp";
    case MetricKind::Confidence: return "Conf";
    case MetricKind::Coverage: return "Cover";
    case MetricKind::Amplitude: return "Amp";
    case MetricKind::Inclusion: return "Incl";
    case MetricKind::Comprehensibility: return "Comp";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(std::string_view label) {
  for (auto kind : kMetricPool) {
    if (to_string(kind) == label) return kind;
  }
  return std::nullopt;
}

RuleCounts count_rule(const Rule& rule, const TransactionDatabase& db) {
  RuleCounts counts;
  counts.transactions = db.n_transactions();
  for (std::size_t r = 0; r < counts.transactions; ++r) {
    const auto row = db.row(r);
    const bool x = satisfies(rule.antecedent, row);
    const bool y = satisfies(rule.consequent, row);
    counts.antecedent += x;
    counts.consequent += y;
    counts.both += x && y;
  }
  return counts;
}

MetricVector metrics_from_counts(const RuleCounts& c) {
  const auto n = static_cast<double>(c.transactions);
  const auto nx = static_cast<double>(c.antecedent);
  const auto ny = static_cast<double>(c.consequent);
  const auto nxy = static_cast<double>(c.both);

  // Ratios of fractions are taken directly on the counts so each value is a
  // single correctly rounded division.
  const double confidence = c.antecedent ? nxy / nx : 0.0;
  MetricVector m;
  m[MetricKind::Support] = nxy / n;
  m[MetricKind::Confidence] = confidence;
  m[MetricKind::Coverage] = ny / n;
  m[MetricKind::Amplitude] = confidence - ny / n;
  m[MetricKind::Inclusion] = confidence;
  m[MetricKind::Comprehensibility] = c.consequent ? nxy / ny : 0.0;
  return m;
}

MetricVector evaluate_metrics(const Rule& rule, const TransactionDatabase& db) {
  return metrics_from_counts(count_rule(rule, db));
}

double evaluate_metric(MetricKind kind, const Rule& rule, const TransactionDatabase& db) {
  return evaluate_metrics(rule, db)[kind];
}

void validate_selection(std::span<const WeightedMetric> selection) {
  if (selection.empty()) throw EmptySelection();
  std::array<bool, 6> seen{};
  for (const auto& s : selection) {
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
      throw InvalidArgument("metric weight for " + std::string(to_string(s.kind)) + " must be positive");
    }
    auto& flag = seen[static_cast<std::size_t>(s.kind)];
    if (flag) throw InvalidArgument("metric " + std::string(to_string(s.kind)) + " selected twice");
    flag = true;
  }
}

double inner_fitness(const MetricVector& metrics, std::span<const WeightedMetric> selection) {
  if (selection.empty()) throw EmptySelection();
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& s : selection) {
    weighted += s.weight * metrics[s.kind];
    total += s.weight;
  }
  return weighted / total;
}

double inner_fitness(const std::optional<Rule>& rule, const TransactionDatabase& db,
                     std::span<const WeightedMetric> selection) {
  if (selection.empty()) throw EmptySelection();
  if (!rule) return kInvalidFitness;
  return inner_fitness(evaluate_metrics(*rule, db), selection);
}

}  // namespace autonarm
