#include "evaluator.hpp"

namespace autonarm::detail {

namespace {

// rand/1/bin trial for individual i; the result is clamped to the box.
std::vector<double> rand1bin(const std::vector<Individual>& pop, std::size_t i, double f, double cr, Rng& rng) {
  const std::size_t np = pop.size();
  const std::size_t dim = pop[i].x.size();
  const std::size_t r1 = pick_excluding(rng, np, {i});
  const std::size_t r2 = pick_excluding(rng, np, {i, r1});
  const std::size_t r3 = pick_excluding(rng, np, {i, r1, r2});
  const std::size_t forced = rng.index(dim);
  std::vector<double> trial = pop[i].x;
  for (std::size_t d = 0; d < dim; ++d) {
    if (d == forced || rng.uniform() < cr) trial[d] = pop[r1].x[d] + f * (pop[r2].x[d] - pop[r3].x[d]);
  }
  clamp_unit(trial);
  return trial;
}

}  // namespace

void run_de(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params) {
  auto pop = initial_population(eval, rng, dim, np);
  while (!eval.exhausted()) {
    for (std::size_t i = 0; i < np && !eval.exhausted(); ++i) {
      auto trial = rand1bin(pop, i, params.de_f, params.de_cr, rng);
      const double f = eval(trial);
      if (f >= pop[i].f) pop[i] = {std::move(trial), f};
    }
  }
}

void run_jde(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params) {
  auto pop = initial_population(eval, rng, dim, np);
  std::vector<double> scale(np, 0.5);
  std::vector<double> crossover(np, 0.9);
  while (!eval.exhausted()) {
    for (std::size_t i = 0; i < np && !eval.exhausted(); ++i) {
      const double f_i = rng.uniform() < params.jde_tau1
                             ? params.jde_f_lower + rng.uniform() * (params.jde_f_upper - params.jde_f_lower)
                             : scale[i];
      const double cr_i = rng.uniform() < params.jde_tau2 ? rng.uniform() : crossover[i];
      auto trial = rand1bin(pop, i, f_i, cr_i, rng);
      const double f = eval(trial);
      if (f >= pop[i].f) {
        pop[i] = {std::move(trial), f};
        scale[i] = f_i;
        crossover[i] = cr_i;
      }
    }
  }
}

}  // namespace autonarm::detail
