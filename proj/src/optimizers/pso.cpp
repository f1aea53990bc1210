#include "evaluator.hpp"

namespace autonarm::detail {

void run_pso(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params) {
  auto personal = initial_population(eval, rng, dim, np);
  std::vector<std::vector<double>> position(np);
  std::vector<std::vector<double>> velocity(np, std::vector<double>(dim, 0.0));
  std::size_t global = 0;
  for (std::size_t i = 0; i < np; ++i) {
    position[i] = personal[i].x;
    if (personal[i].f > personal[global].f) global = i;
  }

  const double vmax = params.pso_vmax;
  while (!eval.exhausted()) {
    for (std::size_t i = 0; i < np && !eval.exhausted(); ++i) {
      auto& x = position[i];
      auto& v = velocity[i];
      for (std::size_t d = 0; d < dim; ++d) {
        const double cognitive = params.pso_c1 * rng.uniform() * (personal[i].x[d] - x[d]);
        const double social = params.pso_c2 * rng.uniform() * (personal[global].x[d] - x[d]);
        v[d] = std::clamp(params.pso_inertia * v[d] + cognitive + social, -vmax, vmax);
        x[d] = std::clamp(x[d] + v[d], 0.0, 1.0);
      }
      const double f = eval(x);
      if (f >= personal[i].f) {
        personal[i] = {x, f};
        if (f >= personal[global].f) global = i;
      }
    }
  }
}

}  // namespace autonarm::detail
