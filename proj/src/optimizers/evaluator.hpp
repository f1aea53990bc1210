#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "autonarm/optimizers.hpp"
#include "autonarm/rng.hpp"

namespace autonarm::detail {

/// Budget-enforcing wrapper around the objective; also keeps the best-so-far
/// and the improvement trace.
class Evaluator {
 public:
  Evaluator(const Objective& objective, const Observer& observer, std::size_t maxfes)
      : objective_(objective), observer_(observer), maxfes_(maxfes) {}

  bool exhausted() const noexcept { return used_ >= maxfes_; }
  std::size_t used() const noexcept { return used_; }
  std::size_t maxfes() const noexcept { return maxfes_; }

  /// Caller must check exhausted() first.
  double operator()(std::span<const double> x) {
    const double f = objective_(x);
    if (observer_) observer_(x, f);
    if (f > result_.best_f || result_.trace.empty()) {
      result_.best_f = f;
      result_.best_x.assign(x.begin(), x.end());
      result_.trace.push_back({used_, f});
    }
    ++used_;
    return f;
  }

  OptimizeResult finish() && {
    result_.evaluations_used = used_;
    return std::move(result_);
  }

 private:
  const Objective& objective_;
  const Observer& observer_;
  std::size_t maxfes_;
  std::size_t used_ = 0;
  OptimizeResult result_;
};

inline void clamp_unit(std::vector<double>& x) {
  for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
}

inline std::vector<double> random_point(Rng& rng, std::size_t dim) {
  std::vector<double> x(dim);
  for (auto& v : x) v = rng.uniform();
  return x;
}

/// Uniform index in [0, n) different from every entry of `excluded`.
inline std::size_t pick_excluding(Rng& rng, std::size_t n, std::initializer_list<std::size_t> excluded) {
  for (;;) {
    const std::size_t i = rng.index(n);
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) return i;
  }
}

struct Individual {
  std::vector<double> x;
  double f = -std::numeric_limits<double>::infinity();
};

/// Evaluates np random points; the budget is known to cover them.
inline std::vector<Individual> initial_population(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np) {
  std::vector<Individual> pop(np);
  for (auto& ind : pop) {
    ind.x = random_point(rng, dim);
    ind.f = eval(ind.x);
  }
  return pop;
}

void run_pso(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params);
void run_de(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params);
void run_ga(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params);
void run_jde(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params);
void run_lshade(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params,
                bool improved_variant);

}  // namespace autonarm::detail
