#include <cctype>
#include <string>

#include "autonarm/error.hpp"
#include "evaluator.hpp"

namespace autonarm {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::PSO: return "PSO";
    case OptimizerKind::DE: return "DE";
    case OptimizerKind::GA: return "GA";
    case OptimizerKind::ILSHADE: return "ILSHADE";
    case OptimizerKind::LSHADE: return "LSHADE";
    case OptimizerKind::JDE: return "jDE";
  }
  return "?";
}

std::optional<OptimizerKind> parse_optimizer(std::string_view name) {
  auto upper = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
  };
  const auto wanted = upper(name);
  for (auto kind : kOptimizerPool) {
    if (upper(to_string(kind)) == wanted) return kind;
  }
  return std::nullopt;
}

OptimizeResult optimize(OptimizerKind kind, const Objective& objective, std::size_t dim,
                        const OptimizerBudget& budget, const Observer& observer, const OptimizerParams& params) {
  if (dim == 0) throw InvalidArgument("optimization dimension must be at least 1");
  if (budget.np < 4) throw InvalidArgument("population size must be at least 4");
  if (budget.maxfes < budget.np) {
    throw BudgetTooSmall("maxfes (" + std::to_string(budget.maxfes) + ") is smaller than np (" +
                         std::to_string(budget.np) + ")");
  }

  detail::Evaluator eval(objective, observer, budget.maxfes);
  Rng rng(budget.seed);
  switch (kind) {
    case OptimizerKind::PSO: detail::run_pso(eval, rng, dim, budget.np, params); break;
    case OptimizerKind::DE: detail::run_de(eval, rng, dim, budget.np, params); break;
    case OptimizerKind::GA: detail::run_ga(eval, rng, dim, budget.np, params); break;
    case OptimizerKind::ILSHADE: detail::run_lshade(eval, rng, dim, budget.np, params, true); break;
    case OptimizerKind::LSHADE: detail::run_lshade(eval, rng, dim, budget.np, params, false); break;
    case OptimizerKind::JDE: detail::run_jde(eval, rng, dim, budget.np, params); break;
  }
  return std::move(eval).finish();
}

}  // namespace autonarm
