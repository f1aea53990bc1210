#include "evaluator.hpp"

namespace autonarm::detail {

void run_ga(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params) {
  auto pop = initial_population(eval, rng, dim, np);
  const double mutation_rate = 1.0 / static_cast<double>(dim);

  auto tournament = [&]() -> const Individual& {
    const auto& a = pop[rng.index(np)];
    const auto& b = pop[rng.index(np)];
    return a.f >= b.f ? a : b;
  };

  while (!eval.exhausted()) {
    std::vector<Individual> next;
    next.reserve(np);
    // Elitism of one.
    next.push_back(*std::max_element(pop.begin(), pop.end(),
                                      [](const Individual& a, const Individual& b) { return a.f < b.f; }));
    while (next.size() < np && !eval.exhausted()) {
      const auto& p1 = tournament();
      const auto& p2 = tournament();
      std::vector<double> child = p1.x;
      if (rng.uniform() < params.ga_crossover) {
        for (std::size_t d = 0; d < dim; ++d) {
          if (rng.uniform() < 0.5) child[d] = p2.x[d];
        }
      }
      for (std::size_t d = 0; d < dim; ++d) {
        if (rng.uniform() < mutation_rate) child[d] += rng.normal(0.0, params.ga_sigma);
      }
      clamp_unit(child);
      const double f = eval(child);
      next.push_back({std::move(child), f});
    }
    // A budget cut mid-generation keeps the tail of the old population.
    for (std::size_t i = next.size(); i < np; ++i) next.push_back(pop[i]);
    pop = std::move(next);
  }
}

}  // namespace autonarm::detail
