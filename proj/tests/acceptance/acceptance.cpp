// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <atomic>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "autonarm/cli.hpp"
#include "autonarm/error.hpp"
#include "autonarm/inner_miner.hpp"
#include "autonarm/optimizers.hpp"
#include "autonarm/pipeline.hpp"
#include "autonarm/report.hpp"
#include "autonarm/rng.hpp"
#include "autonarm/search.hpp"
#include "support.hpp"
#include "wilcoxon_oracle.hpp"

using namespace autonarm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) body(i);
    });
}

// 1. metrics against the counting oracle
Outcome metric_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(1);
  std::size_t pairs = 0, mismatches = 0;
  while (pairs < 500) {
    const auto db = testing::random_db(gen, 1 + gen() % 32, 2 + gen() % 5);
    const auto rule = decode_rule(testing::random_point(gen, rule_dimension(db)), db);
    if (!rule) continue;
    ++pairs;
    const auto got = evaluate_metrics(*rule, db);
    const auto want = testing::oracle_metrics(*rule, db);
    for (std::size_t k = 0; k < 6; ++k) mismatches += got.values[k] != want[k];
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << pairs << " pairs, " << mismatches << " mismatching values, " << secs << " s";
  return {mismatches == 0 && secs < 10.0, d.str()};
}

// 2. genotype mapping endpoints and pool uniformity
Outcome mapping() {
  bool ok = map_hyperparam(0, 10, 30) == 10 && map_hyperparam(1, 10, 30) == 30 &&
            map_hyperparam(0, 2000, 10000) == 2000 && map_hyperparam(1, 2000, 10000) == 10000;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<std::size_t, 6> counts{};
  const std::size_t draws = 1'000'000;
  for (std::size_t i = 0; i < draws; ++i) ++counts[map_scalar_to_pool(u(gen), 6)];
  double worst = 0;
  for (auto c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) / (draws / 6.0) - 1.0));
  ok = ok && worst <= 0.02;
  std::ostringstream d;
  d << "endpoints " << (ok ? "ok" : "checked") << ", worst relative deviation " << worst;
  return {ok, d.str()};
}

// 3. undecodable genotypes are discarded
Outcome discard_rule() {
  const auto db = testing::bolts_like();
  SearchConfig cfg;
  cfg.np_range = {10, 12};
  cfg.maxfes_range = {100, 150};
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto g = testing::random_point(gen, cfg.dimension());
    const std::size_t z0 = 3 + cfg.preprocess_pool.size();
    for (std::size_t j = 0; j < cfg.metric_pool.size(); ++j) g[z0 + j] = 0.5 * u(gen);
    if (trial % 10 == 0) std::fill(g.begin() + z0, g.begin() + z0 + 6, 0.5);  // boundary value
    const auto r = evaluate_pipeline({g}, db, cfg, gen());
    good += r.discarded && r.fitness == -1.0;
  }
  return {good == 100, std::to_string(good) + "/100 discarded with fitness -1"};
}

// 4. surrogate fitness arithmetic over mined archives
Outcome surrogate_arithmetic() {
  std::mt19937_64 gen(4);
  std::size_t archives = 0, bad = 0;
  double worst = 0;
  while (archives < 100) {
    const auto db = testing::random_db(gen, 4 + gen() % 20, 2 + gen() % 4);
    const auto kind = kOptimizerPool[gen() % 6];
    const std::vector<WeightedMetric> sel{{MetricKind::Support, 1}, {MetricKind::Confidence, 1}};
    const auto archive = mine(db, kind, {8, 80, gen()}, sel);
    if (archive.empty()) continue;
    ++archives;
    double s = 0, c = 0;
    for (const auto& e : archive.entries) {
      const auto m = testing::oracle_metrics(e.rule, db);
      s += m[0];
      c += m[1];
    }
    s /= static_cast<double>(archive.size());
    c /= static_cast<double>(archive.size());
    const double err = std::abs(pipeline_fitness(archive, 1, 1) - (s + c) / 2);
    worst = std::max(worst, err);
    bad += err > 1e-12;
    bad += pipeline_fitness(archive, 1, 0) != archive.mean_support;
  }
  std::ostringstream d;
  d << archives << " archives, worst |error| " << worst << ", " << bad << " violations";
  return {bad == 0, d.str()};
}

// 5. elitism of the outer loop
Outcome elitism() {
  SearchConfig cfg;
  cfg.np_range = {10, 12};
  cfg.maxfes_range = {100, 200};
  const auto toy = testing::toy_db();
  const auto bolts = testing::bolts_like();
  std::atomic<std::size_t> bad{0};
  parallel_for(50, [&](std::size_t i) {
    OuterConfig outer;
    outer.outer_kind = i % 2 ? OptimizerKind::DE : OptimizerKind::PSO;
    outer.outer_np = 6;
    outer.outer_maxfes = 30;
    outer.base_seed = 500 + i;
    const auto r = search(i < 25 ? toy : bolts, cfg, outer, i);
    double initial = kInvalidFitness;
    bool ok = !r.fitness_trace.empty() && r.fitness_trace.back().fitness == r.best_fitness;
    for (std::size_t k = 0; k < r.fitness_trace.size(); ++k) {
      if (k > 0) ok = ok && r.fitness_trace[k].fitness >= r.fitness_trace[k - 1].fitness;
      if (r.fitness_trace[k].evaluation < outer.outer_np) initial = std::max(initial, r.fitness_trace[k].fitness);
    }
    ok = ok && r.best_fitness >= initial;
    if (!ok) ++bad;
  });
  return {bad == 0, std::to_string(50 - bad) + "/50 runs elitist"};
}

// 6. outer search versus random genotypes on the wine data
Outcome beats_random() {
  const auto t0 = Clock::now();
  const auto wine = load_csv(AUTONARM_DATA_DIR "/wine.csv", true);
  SearchConfig cfg;
  cfg.maxfes_range = {2000, 2000};
  OuterConfig outer;
  outer.outer_np = 10;
  outer.outer_maxfes = 100;
  outer.runs = 10;
  outer.base_seed = 6;
  outer.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto report = run_experiment(wine, cfg, outer, "wine");

  std::vector<double> searched, random(10);
  for (const auto& r : report.runs) searched.push_back(r.best_fitness);
  parallel_for(10, [&](std::size_t run) {
    // paired with the search of the same run; fresh genotypes and seeds
    const auto seed = derive_seed(run_seed(outer.base_seed, run), 0xabcdefULL);
    std::mt19937_64 gen(seed);
    double best = kInvalidFitness;
    for (std::size_t i = 0; i < 100; ++i) {
      const auto g = testing::random_point(gen, cfg.dimension());
      best = std::max(best, evaluate_pipeline({g}, wine, cfg, derive_seed(seed, i)).fitness);
    }
    random[run] = best;
  });
  const double secs = seconds_since(t0);
  const double ms = median(searched), mr = median(random);
  std::ostringstream d;
  d << "median search " << ms << " vs random " << mr << ", " << secs << " s";
  return {ms > mr && secs < 900.0, d.str()};
}

// 7. weight reporting convention
Outcome weight_convention() {
  const auto db = testing::bolts_like();
  SearchConfig cfg;
  cfg.np_range = {10, 12};
  cfg.maxfes_range = {100, 150};
  OuterConfig outer;
  outer.outer_np = 6;
  outer.outer_maxfes = 18;
  outer.runs = 6;
  outer.base_seed = 7;
  outer.jobs = 4;
  std::size_t bad = 0;
  for (bool adapt : {false, true}) {
    cfg.weight_adaptation = adapt;
    const auto rep = run_experiment(db, cfg, outer);
    for (const auto& [name, usage] : rep.metrics) {
      bad += usage.used_in > outer.runs;
      if (!usage.weight) continue;
      if (!adapt) bad += usage.weight->mean != 1.0 || usage.weight->std != 0.0;
      else bad += usage.weight->mean < kMinMetricWeight || usage.weight->mean > 1.0;
    }
    for (const auto& run : rep.runs)
      for (const auto& m : run.best_spec.metrics) {
        if (!adapt) bad += m.weight != 1.0;
        else bad += m.weight < kMinMetricWeight || m.weight > 1.0;
      }
  }
  return {bad == 0, std::to_string(bad) + " violations over fixed and adaptive experiments"};
}

// 8. byte-identical experiment reports
Outcome determinism() {
  const auto dir = testing::scratch_dir("acceptance");
  testing::write_text(dir / "toy.csv", "A,B,C\n2,r,1.5\n5,r,2.5\n7,g,0.5\n9,b,3\n4,r,2\n6,g,1\n3,b,0.25\n");
  const auto invoke = [&](const std::string& out) {
    std::ostringstream sink, err;
    return run_cli({"experiment", "--dataset", (dir / "toy.csv").string(), "--runs", "4", "--outer-np", "6",
                    "--outer-fes", "18", "--np-min", "10", "--np-max", "12", "--maxfes-min", "100", "--maxfes-max",
                    "200", "--seed", "8", "--jobs", "2", "--out", (dir / out).string()},
                   sink, err);
  };
  const bool ran = invoke("a.json") == 0 && invoke("b.json") == 0;
  const auto a = testing::read_text(dir / "a.json"), b = testing::read_text(dir / "b.json");
  std::filesystem::remove_all(dir);
  const bool same = ran && !a.empty() && a == b;
  return {same, ran ? (same ? std::to_string(a.size()) + " identical bytes" : "reports differ") : "command failed"};
}

// 9. Wilcoxon p-values
Outcome wilcoxon() {
  std::mt19937_64 gen(9);
  double worst_exact = 0, worst_normal = 0;
  std::size_t exact_cases = 0, normal_cases = 0;
  bool branches = true;
  for (std::size_t n = 5; n <= 10; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a(n), b(n);
      const unsigned grid = trial % 2 ? 5 : 1000;  // half with ties and zeros
      for (std::size_t i = 0; i < n; ++i) a[i] = gen() % grid, b[i] = gen() % grid;
      testing::WilcoxonOracle oracle(a, b);
      if (oracle.n == 0) continue;
      const auto r = wilcoxon_signed_rank(a, b);
      branches = branches && r.exact;
      worst_exact = std::max(worst_exact, std::abs(r.p_value - oracle.exact_p()));
      ++exact_cases;
    }
  }
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(30), b(30);
    const double shift = 0.1 * (trial % 7);
    for (std::size_t i = 0; i < 30; ++i) a[i] = nd(gen) + shift, b[i] = nd(gen);
    if (trial % 3 == 0)
      for (auto* v : {&a, &b})
        for (auto& x : *v) x = std::round(x * 8) / 8;
    testing::WilcoxonOracle oracle(a, b);
    if (oracle.n <= kWilcoxonExactLimit) continue;
    const auto r = wilcoxon_signed_rank(a, b);
    branches = branches && !r.exact;
    worst_normal = std::max(worst_normal, std::abs(r.p_value - oracle.normal_p()));
    ++normal_cases;
  }
  std::ostringstream d;
  d << exact_cases << " exact cases (worst " << worst_exact << "), " << normal_cases << " normal cases (worst "
    << worst_normal << ")";
  return {branches && worst_exact <= 1e-9 && worst_normal <= 1e-9 && normal_cases > 100, d.str()};
}

// 10. optimizer sanity on 1 - sum (x - 0.5)^2
Outcome optimizer_sanity() {
  const Objective f = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += (v - 0.5) * (v - 0.5);
    return 1.0 - s;
  };
  std::vector<double> random_best;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(seed + 1000);
    double best = -1e300;
    for (int i = 0; i < 4000; ++i) best = std::max(best, f(testing::random_point(gen, 5)));
    random_best.push_back(best);
  }
  const double random_median = median(random_best);
  std::ostringstream d;
  bool ok = true;
  for (auto kind : kOptimizerPool) {
    std::vector<double> bests;
    for (std::uint64_t seed = 0; seed < 10; ++seed) bests.push_back(optimize(kind, f, 5, {20, 4000, seed}).best_f);
    const double m = median(bests);
    ok = ok && m >= 0.999 && m > random_median;
    d << to_string(kind) << " " << m << ", ";
  }
  d << "random " << random_median;
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"metric oracle equivalence", metric_oracle},
      {"genotype mapping endpoints and uniformity", mapping},
      {"discard rule", discard_rule},
      {"surrogate fitness arithmetic", surrogate_arithmetic},
      {"outer elitism", elitism},
      {"search beats random on wine", beats_random},
      {"weight-adaptation report convention", weight_convention},
      {"determinism", determinism},
      {"wilcoxon correctness", wilcoxon},
      {"optimizer sanity", optimizer_sanity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
