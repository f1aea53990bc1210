#include "autonarm/rules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "autonarm/error.hpp"

namespace autonarm {

namespace {

constexpr std::size_t kGenesPerAttribute = 4;

inline std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_side(std::size_t seed, const std::vector<Condition>& side) noexcept {
  for (const auto& c : side) {
    seed = hash_combine(seed, c.attribute_index);
    if (const auto* iv = std::get_if<NumericInterval>(&c.form)) {
      seed = hash_combine(seed, std::bit_cast<std::uint64_t>(iv->lo));
      seed = hash_combine(seed, std::bit_cast<std::uint64_t>(iv->hi));
    } else {
      seed = hash_combine(seed, ~std::get<CategoryEquals>(c.form).category_index);
    }
  }
  return seed;
}

}  // namespace

std::size_t RuleHash::operator()(const Rule& rule) const noexcept {
  return hash_side(hash_side(rule.antecedent.size(), rule.antecedent), rule.consequent);
}

std::size_t rule_dimension(const TransactionDatabase& db) noexcept {
  return kGenesPerAttribute * db.n_attributes() + 1;
}

std::optional<Rule> decode_rule(std::span<const double> x, const TransactionDatabase& db) {
  const std::size_t dim = rule_dimension(db);
  if (x.size() != dim) throw DimensionMismatch(x.size(), dim);

  struct Included {
    std::size_t attribute;
    double order;
  };
  std::vector<Included> included;
  for (std::size_t j = 0; j < db.n_attributes(); ++j) {
    if (x[kGenesPerAttribute * j + 3] > 0.5) included.push_back({j, x[kGenesPerAttribute * j]});
  }
  const std::size_t m = included.size();
  if (m < 2) return std::nullopt;

  std::stable_sort(included.begin(), included.end(),
                   [](const Included& a, const Included& b) { return a.order > b.order; });

  auto condition_for = [&](std::size_t j) {
    const Attribute& a = db.attribute(j);
    const double v1 = x[kGenesPerAttribute * j + 1];
    const double v2 = x[kGenesPerAttribute * j + 2];
    if (a.is_numeric()) {
      const double span = a.max - a.min;
      const double lo = std::clamp(a.min + std::min(v1, v2) * span, a.min, a.max);
      const double hi = std::clamp(a.min + std::max(v1, v2) * span, a.min, a.max);
      return Condition{j, NumericInterval{lo, hi}};
    }
    const std::size_t k = a.categories.size();
    const auto index = static_cast<std::size_t>(std::max(0.0, std::floor(v1 * static_cast<double>(k))));
    return Condition{j, CategoryEquals{std::min(index, k - 1)}};
  };

  const double cut_gene = x[dim - 1];
  const auto rounded = static_cast<long long>(std::round(cut_gene * static_cast<double>(m)));
  const auto cut = static_cast<std::size_t>(std::max(1LL, std::min(static_cast<long long>(m) - 1, rounded)));

  Rule rule;
  rule.antecedent.reserve(cut);
  rule.consequent.reserve(m - cut);
  for (std::size_t i = 0; i < m; ++i) {
    (i < cut ? rule.antecedent : rule.consequent).push_back(condition_for(included[i].attribute));
  }
  return rule;
}

bool satisfies(std::span<const Condition> conditions, std::span<const double> row) noexcept {
  for (const auto& c : conditions) {
    if (!c.holds(row)) return false;
  }
  return true;
}

void validate_rule(const Rule& rule, const TransactionDatabase& db) {
  if (rule.antecedent.empty() || rule.consequent.empty()) throw InvalidArgument("rule side is empty");
  std::vector<bool> used(db.n_attributes(), false);
  auto check = [&](const Condition& c) {
    const Attribute& a = db.attribute(c.attribute_index);
    if (used[c.attribute_index]) throw InvalidArgument("attribute '" + a.name + "' appears twice in rule");
    used[c.attribute_index] = true;
    if (const auto* iv = std::get_if<NumericInterval>(&c.form)) {
      if (!a.is_numeric()) throw InvalidArgument("interval on categorical attribute '" + a.name + "'");
      if (!(iv->lo <= iv->hi && iv->lo >= a.min && iv->hi <= a.max)) {
        throw InvalidArgument("interval outside domain of '" + a.name + "'");
      }
    } else {
      if (a.is_numeric()) throw InvalidArgument("category test on numeric attribute '" + a.name + "'");
      if (std::get<CategoryEquals>(c.form).category_index >= a.categories.size()) {
        throw InvalidArgument("category index out of range for '" + a.name + "'");
      }
    }
  };
  for (const auto& c : rule.antecedent) check(c);
  for (const auto& c : rule.consequent) check(c);
}

std::string to_string(const Condition& condition, const TransactionDatabase& db) {
  const Attribute& a = db.attribute(condition.attribute_index);
  if (const auto* iv = std::get_if<NumericInterval>(&condition.form)) {
    return a.name + " ∈ [" + format_real(iv->lo) + ", " + format_real(iv->hi) + "]";
  }
  return a.name + " = " + a.categories.at(std::get<CategoryEquals>(condition.form).category_index);
}

std::string to_string(const Rule& rule, const TransactionDatabase& db) {
  auto side = [&](const std::vector<Condition>& conditions) {
    std::string out;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
      if (i) out += " ∧ ";
      out += to_string(conditions[i], db);
    }
    return out;
  };
  return side(rule.antecedent) + " ⟹ " + side(rule.consequent);
}

}  // namespace autonarm
