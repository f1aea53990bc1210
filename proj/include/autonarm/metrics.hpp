#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "autonarm/dataset.hpp"
#include "autonarm/rules.hpp"

namespace autonarm {

/// Rule-quality metrics, in pool order.
enum class MetricKind { Support, Confidence, Coverage, Amplitude, Inclusion, Comprehensibility };

inline constexpr std::array<MetricKind, 6> kMetricPool = {MetricKind::Support,   MetricKind::Confidence,
                                                          MetricKind::Coverage,  MetricKind::Amplitude,
                                                          MetricKind::Inclusion, MetricKind::Comprehensibility};

/// Report label: Supp, Conf, Cover, Amp, Incl, Comp.
std::string_view to_string(MetricKind kind);
std::optional<MetricKind> parse_metric(std::string_view label);

/// Fitness assigned to an undecodable rule; below every valid fitness.
inline constexpr double kInvalidFitness = -1.0;

/// All six metric values of one rule, indexed by MetricKind.
struct MetricVector {
  std::array<double, 6> values{};

  double operator[](MetricKind kind) const noexcept { return values[static_cast<std::size_t>(kind)]; }
  double& operator[](MetricKind kind) noexcept { return values[static_cast<std::size_t>(kind)]; }

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

/// Transaction counts a rule's metrics derive from.
struct RuleCounts {
  std::size_t transactions = 0;
  std::size_t antecedent = 0;  // rows satisfying X
  std::size_t consequent = 0;  // rows satisfying Y
  std::size_t both = 0;        // rows satisfying X and Y
};

RuleCounts count_rule(const Rule& rule, const TransactionDatabase& db);

/// With s(.) the fraction of satisfying rows:
///   Supp = s(XY), Conf = Incl = s(XY)/s(X), Cover = s(Y),
///   Amp = Conf - s(Y), Comp = s(XY)/s(Y).
/// A zero denominator yields 0.
MetricVector metrics_from_counts(const RuleCounts& counts);

MetricVector evaluate_metrics(const Rule& rule, const TransactionDatabase& db);
double evaluate_metric(MetricKind kind, const Rule& rule, const TransactionDatabase& db);

struct WeightedMetric {
  MetricKind kind;
  double weight;
  friend bool operator==(const WeightedMetric&, const WeightedMetric&) = default;
};

/// Normalized weighted sum over the selected metrics.
double inner_fitness(const MetricVector& metrics, std::span<const WeightedMetric> selection);
/// Same, with kInvalidFitness for an undecodable rule.
double inner_fitness(const std::optional<Rule>& rule, const TransactionDatabase& db,
                     std::span<const WeightedMetric> selection);

/// Throws EmptySelection or InvalidArgument (non-positive weight, repeated metric).
void validate_selection(std::span<const WeightedMetric> selection);

}  // namespace autonarm
