#include <cmath>
#include <numeric>

#include "evaluator.hpp"

namespace autonarm::detail {

namespace {

constexpr double kTerminal = -1.0;  // memory value meaning "use CR = 0"

struct Success {
  std::vector<double> cr;
  std::vector<double> f;
  std::vector<double> gain;
};

double weighted_lehmer(const std::vector<double>& values, const std::vector<double>& gain) {
  const double total = std::accumulate(gain.begin(), gain.end(), 0.0);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double w = gain[k] / total;
    num += w * values[k] * values[k];
    den += w * values[k];
  }
  return den > 0.0 ? num / den : 0.0;
}

std::size_t round_to_size(double v) { return static_cast<std::size_t>(std::lround(v)); }

}  // namespace

// L-SHADE (success-history memory, current-to-pbest/1 with archive, linear
// population size reduction). The improved variant adds the iL-SHADE changes:
// one memory slot pinned at 0.9, memory updates averaged with the previous
// entry, a linearly growing p-best rate and stage-wise caps on F and floors on CR.
void run_lshade(Evaluator& eval, Rng& rng, std::size_t dim, std::size_t np, const OptimizerParams& params,
                bool improved) {
  const std::size_t initial_np = np;
  const std::size_t min_np = std::min(params.shade_min_population, initial_np);
  const std::size_t memory_size = std::max<std::size_t>(params.shade_memory, improved ? 2 : 1);
  const double maxfes = static_cast<double>(eval.maxfes());

  std::vector<double> memory_f(memory_size, 0.5);
  std::vector<double> memory_cr(memory_size, improved ? 0.8 : 0.5);
  if (improved) {
    memory_f.back() = 0.9;
    memory_cr.back() = 0.9;
  }
  const std::size_t updatable = improved ? memory_size - 1 : memory_size;
  std::size_t memory_pos = 0;

  auto pop = initial_population(eval, rng, dim, np);
  std::vector<std::vector<double>> archive;
  std::size_t archive_cap = round_to_size(params.shade_archive_rate * static_cast<double>(np));

  std::vector<std::size_t> order(np);
  while (!eval.exhausted()) {
    np = pop.size();
    const double progress = static_cast<double>(eval.used()) / maxfes;
    const double p = improved ? params.ilshade_pbest_min + (params.ilshade_pbest_max - params.ilshade_pbest_min) * progress
                              : params.lshade_pbest;
    const std::size_t p_count = std::clamp<std::size_t>(round_to_size(p * static_cast<double>(np)), 2, np);

    order.resize(np);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pop[a].f > pop[b].f; });

    std::vector<Individual> trials;
    std::vector<double> trial_cr, trial_f;
    trials.reserve(np);
    for (std::size_t i = 0; i < np && !eval.exhausted(); ++i) {
      const std::size_t r = rng.index(memory_size);
      double cr = memory_cr[r] == kTerminal ? 0.0 : std::clamp(rng.normal(memory_cr[r], 0.1), 0.0, 1.0);
      double f = 0.0;
      do {
        f = rng.cauchy(memory_f[r], 0.1);
      } while (f <= 0.0);
      f = std::min(f, 1.0);
      if (improved) {
        const double at = static_cast<double>(eval.used()) / maxfes;
        if (at < 0.25) {
          cr = std::max(cr, 0.5);
          f = std::min(f, 0.7);
        } else if (at < 0.5) {
          cr = std::max(cr, 0.25);
          f = std::min(f, 0.8);
        } else if (at < 0.75) {
          f = std::min(f, 0.9);
        }
      }

      const std::size_t pbest = order[rng.index(p_count)];
      const std::size_t r1 = pick_excluding(rng, np, {i});
      std::size_t r2 = 0;
      do {
        r2 = rng.index(np + archive.size());
      } while (r2 == i || r2 == r1);
      const auto& xr2 = r2 < np ? pop[r2].x : archive[r2 - np];

      const auto& x = pop[i].x;
      const std::size_t forced = rng.index(dim);
      std::vector<double> u = x;
      for (std::size_t d = 0; d < dim; ++d) {
        if (d == forced || rng.uniform() < cr) {
          u[d] = x[d] + f * (pop[pbest].x[d] - x[d]) + f * (pop[r1].x[d] - xr2[d]);
        }
      }
      clamp_unit(u);
      const double fu = eval(u);
      trials.push_back({std::move(u), fu});
      trial_cr.push_back(cr);
      trial_f.push_back(f);
    }

    Success success;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      if (trials[i].f < pop[i].f) continue;
      if (trials[i].f > pop[i].f) {
        archive.push_back(pop[i].x);
        success.cr.push_back(trial_cr[i]);
        success.f.push_back(trial_f[i]);
        success.gain.push_back(trials[i].f - pop[i].f);
      }
      pop[i] = std::move(trials[i]);
    }
    while (archive.size() > archive_cap) archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(rng.index(archive.size())));

    if (!success.f.empty()) {
      const double new_f = weighted_lehmer(success.f, success.gain);
      const bool cr_terminal =
          memory_cr[memory_pos] == kTerminal || *std::max_element(success.cr.begin(), success.cr.end()) == 0.0;
      const double new_cr = cr_terminal ? kTerminal : weighted_lehmer(success.cr, success.gain);
      if (improved) {
        memory_f[memory_pos] = (new_f + memory_f[memory_pos]) / 2.0;
        memory_cr[memory_pos] = cr_terminal ? kTerminal : (new_cr + memory_cr[memory_pos]) / 2.0;
      } else {
        memory_f[memory_pos] = new_f;
        memory_cr[memory_pos] = new_cr;
      }
      memory_pos = (memory_pos + 1) % updatable;
    }

    // Linear population size reduction.
    const double used = static_cast<double>(eval.used());
    const std::size_t target = std::max(
        min_np, round_to_size(static_cast<double>(initial_np) -
                              static_cast<double>(initial_np - min_np) * std::min(used, maxfes) / maxfes));
    if (target < pop.size()) {
      std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) { return a.f > b.f; });
      pop.resize(target);
      archive_cap = round_to_size(params.shade_archive_rate * static_cast<double>(target));
      while (archive.size() > archive_cap) {
        archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(rng.index(archive.size())));
      }
    }
  }
}

}  // namespace autonarm::detail
