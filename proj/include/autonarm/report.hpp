#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "autonarm/search.hpp"

namespace autonarm {

struct ComparisonResult {
  double statistic = 0.0;  // min(W+, W-)
  double p_value = 1.0;    // two-sided
  std::size_t n_effective = 0;
  bool exact = false;
};

/// Largest number of non-zero pairs handled by the exact null distribution;
/// larger samples use the normal approximation.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped
/// and tied magnitudes share their average rank. Up to kWilcoxonExactLimit
/// pairs the p-value comes from the exact distribution of the rank sum
/// (computed with the tied ranks); above it from the normal approximation
/// with tie and continuity corrections.
///
/// Throws LengthMismatch, or TooFewPairs when fewer than five pairs are
/// given or every difference is zero.
ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

enum class ReportFormat { Json, Csv };

std::string to_json(const AggregateReport& report, bool include_timing = false);
AggregateReport aggregate_from_json(const std::string& text);

/// One row per run after a header row.
void write_csv(const AggregateReport& report, std::ostream& out, bool include_timing = false);

void emit_report(const AggregateReport& report, ReportFormat format, const std::filesystem::path& path,
                 bool include_timing = false);

/// Best fitness per run from a JSON or CSV report file.
std::vector<double> load_best_fitness(const std::filesystem::path& path);

}  // namespace autonarm
