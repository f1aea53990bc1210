#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace autonarm {

/// Optimizer pool, in its fixed order.
enum class OptimizerKind { PSO, DE, GA, ILSHADE, LSHADE, JDE };

inline constexpr std::array<OptimizerKind, 6> kOptimizerPool = {OptimizerKind::PSO,     OptimizerKind::DE,
                                                                OptimizerKind::GA,      OptimizerKind::ILSHADE,
                                                                OptimizerKind::LSHADE, OptimizerKind::JDE};

std::string_view to_string(OptimizerKind kind);
/// Case-insensitive.
std::optional<OptimizerKind> parse_optimizer(std::string_view name);

struct OptimizerBudget {
  std::size_t np = 20;
  std::size_t maxfes = 1000;
  std::uint64_t seed = 0;
};

/// Control parameters of the pool. Defaults are the published defaults of
/// each algorithm.
struct OptimizerParams {
  // DE/rand/1/bin
  double de_f = 0.5;
  double de_cr = 0.9;
  // PSO (inertia weight variant)
  double pso_inertia = 0.7;
  double pso_c1 = 2.0;
  double pso_c2 = 2.0;
  double pso_vmax = 0.5;
  // GA
  double ga_crossover = 0.8;
  double ga_sigma = 0.1;
  // jDE
  double jde_tau1 = 0.1;
  double jde_tau2 = 0.1;
  double jde_f_lower = 0.1;
  double jde_f_upper = 1.0;
  // L-SHADE and iL-SHADE
  std::size_t shade_memory = 6;
  double shade_archive_rate = 2.6;
  double lshade_pbest = 0.11;
  double ilshade_pbest_min = 0.1;
  double ilshade_pbest_max = 0.2;
  std::size_t shade_min_population = 4;

  friend bool operator==(const OptimizerParams&, const OptimizerParams&) = default;
};

struct TracePoint {
  std::size_t evaluation;  // 0-based evaluation index
  double fitness;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct OptimizeResult {
  std::vector<double> best_x;
  double best_f = 0.0;
  std::size_t evaluations_used = 0;
  std::vector<TracePoint> trace;  // one entry per strict improvement of the best
};

using Objective = std::function<double(std::span<const double>)>;
/// Called once per evaluation with the evaluated point and its fitness.
using Observer = std::function<void(std::span<const double>, double)>;

/// Maximizes `objective` over [0,1]^dim using exactly budget.maxfes evaluations.
///
/// Candidates are clamped to the unit box before evaluation. Results depend
/// only on (kind, dim, budget, params, objective). Throws BudgetTooSmall when
/// maxfes < np and InvalidArgument when np < 4 or dim == 0.
OptimizeResult optimize(OptimizerKind kind, const Objective& objective, std::size_t dim,
                        const OptimizerBudget& budget, const Observer& observer = {},
                        const OptimizerParams& params = {});

}  // namespace autonarm
