#include <doctest.h>

#include "autonarm/error.hpp"
#include "autonarm/optimizers.hpp"
#include "support.hpp"

using namespace autonarm;

namespace {

double sphere(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += (v - 0.5) * (v - 0.5);
  return 1.0 - s;
}

}  // namespace

TEST_CASE("pool order and labels") {
  std::vector<std::string> labels;
  for (auto k : kOptimizerPool) labels.emplace_back(to_string(k));
  CHECK(labels == std::vector<std::string>{"PSO", "DE", "GA", "ILSHADE", "LSHADE", "jDE"});
  CHECK(parse_optimizer("jde") == OptimizerKind::JDE);
  CHECK(parse_optimizer("ilshade") == OptimizerKind::ILSHADE);
  CHECK_FALSE(parse_optimizer("cmaes").has_value());
}

TEST_CASE("budget preconditions") {
  for (auto k : kOptimizerPool) {
    CHECK_THROWS_AS(optimize(k, sphere, 5, {20, 10, 0}), BudgetTooSmall);
    CHECK_THROWS_AS(optimize(k, sphere, 0, {20, 100, 0}), InvalidArgument);
    CHECK_THROWS_AS(optimize(k, sphere, 5, {3, 100, 0}), InvalidArgument);
  }
}

TEST_CASE("contract on every kind") {
  for (auto k : kOptimizerPool) {
    CAPTURE(to_string(k));
    for (std::size_t maxfes : {20u, 21u, 333u, 1000u}) {
      std::size_t calls = 0, observed = 0;
      double best_seen = -1e300, first_np_best = -1e300;
      bool in_box = true;
      const Objective f = [&](std::span<const double> x) {
        ++calls;
        for (double v : x) in_box = in_box && v >= 0.0 && v <= 1.0;
        return sphere(x);
      };
      const Observer obs = [&](std::span<const double>, double fx) {
        if (observed < 20) first_np_best = std::max(first_np_best, fx);
        ++observed;
        best_seen = std::max(best_seen, fx);
      };
      const auto r = optimize(k, f, 7, {20, maxfes, 99}, obs);
      CHECK(calls == maxfes);
      CHECK(observed == maxfes);
      CHECK(r.evaluations_used == maxfes);
      CHECK(in_box);
      CHECK(r.best_f == best_seen);
      CHECK(r.best_f >= first_np_best);
      CHECK(sphere(r.best_x) == r.best_f);
      REQUIRE_FALSE(r.trace.empty());
      CHECK(r.trace.front().evaluation == 0);
      CHECK(r.trace.back().fitness == r.best_f);
      for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].fitness > r.trace[i - 1].fitness);
        CHECK(r.trace[i].evaluation > r.trace[i - 1].evaluation);
      }
    }
  }
}

TEST_CASE("same seed, same result") {
  for (auto k : kOptimizerPool) {
    const auto a = optimize(k, sphere, 5, {12, 500, 1234});
    const auto b = optimize(k, sphere, 5, {12, 500, 1234});
    CHECK(a.best_x == b.best_x);
    CHECK(a.best_f == b.best_f);
    CHECK(a.trace == b.trace);
    const auto c = optimize(k, sphere, 5, {12, 500, 1235});
    CHECK(c.best_x != a.best_x);
  }
}

TEST_CASE("constant landscape") {
  for (auto k : kOptimizerPool) {
    const auto r = optimize(k, [](std::span<const double>) { return 0.3; }, 4, {10, 200, 1});
    CHECK(r.best_f == 0.3);
    CHECK(r.trace.size() == 1);
  }
}

TEST_CASE("every kind makes progress on a smooth landscape") {
  for (auto k : kOptimizerPool) {
    CAPTURE(to_string(k));
    const auto r = optimize(k, sphere, 5, {20, 4000, 3});
    CHECK(r.best_f >= 0.99);
  }
}

TEST_CASE("parameter overrides reach the algorithms") {
  OptimizerParams p;
  p.de_f = 0.9;
  const auto a = optimize(OptimizerKind::DE, sphere, 5, {10, 300, 5});
  const auto b = optimize(OptimizerKind::DE, sphere, 5, {10, 300, 5}, {}, p);
  CHECK(a.best_x != b.best_x);
}
