#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "autonarm/dataset.hpp"

namespace autonarm {

/// Closed interval over a numeric attribute.
struct NumericInterval {
  double lo;
  double hi;
  friend bool operator==(const NumericInterval&, const NumericInterval&) = default;
};

struct CategoryEquals {
  std::size_t category_index;
  friend bool operator==(const CategoryEquals&, const CategoryEquals&) = default;
};

struct Condition {
  std::size_t attribute_index;
  std::variant<NumericInterval, CategoryEquals> form;

  bool holds(std::span<const double> row) const noexcept {
    const double v = row[attribute_index];
    if (const auto* iv = std::get_if<NumericInterval>(&form)) return iv->lo <= v && v <= iv->hi;
    return static_cast<std::size_t>(v) == std::get<CategoryEquals>(form).category_index;
  }

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// X => Y. Both sides are non-empty and reference disjoint attributes.
struct Rule {
  std::vector<Condition> antecedent;
  std::vector<Condition> consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleHash {
  std::size_t operator()(const Rule& rule) const noexcept;
};

/// Identifier of the rule codec, recorded in reports.
inline constexpr const char* kRuleCodecVersion = "interval-gated-v1";

/// Length of the solution vector decoded by decode_rule: four genes per
/// attribute plus one cut gene.
std::size_t rule_dimension(const TransactionDatabase& db) noexcept;

/// Decodes a vector in [0,1]^rule_dimension(db).
///
/// Attribute j owns genes (order, bound_a, bound_b, gate) at 4j..4j+3 and is
/// included when gate > 0.5. Numeric attributes map min/max of the two
/// bounds affinely onto the attribute domain; categorical attributes pick
/// category floor(bound_a * k). Included attributes are ordered by the order
/// gene (descending, ties by index) and the final gene picks how many open
/// the antecedent. Returns nullopt when fewer than two attributes are included.
std::optional<Rule> decode_rule(std::span<const double> x, const TransactionDatabase& db);

/// True iff every condition holds for the row. The empty list holds everywhere.
bool satisfies(std::span<const Condition> conditions, std::span<const double> row) noexcept;

/// Throws InvalidArgument when `rule` violates its invariants against `db`.
void validate_rule(const Rule& rule, const TransactionDatabase& db);

std::string to_string(const Condition& condition, const TransactionDatabase& db);
/// `A ∈ [lo, hi] ∧ B = cat ⟹ C ∈ [lo, hi]`
std::string to_string(const Rule& rule, const TransactionDatabase& db);

}  // namespace autonarm
