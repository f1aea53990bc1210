#include "autonarm/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "autonarm/dataset.hpp"
#include "autonarm/error.hpp"
#include "autonarm/report.hpp"
#include "autonarm/search.hpp"
#include "json.hpp"

namespace autonarm {

namespace {

struct CliConfig {
  std::string dataset;
  bool header = true;
  std::vector<std::string> drop;
  std::string outer = "pso";
  std::size_t runs = 30;
  std::size_t outer_np = 30;
  std::size_t outer_fes = 1000;
  bool weight_adaptation = false;
  std::size_t max_preprocess = kPreprocessPool.size();
  double alpha = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;
  std::string format = "json";
  bool timing = false;
  std::size_t report_rules = 10;

  std::size_t np_min = 10, np_max = 30;
  std::size_t maxfes_min = 2000, maxfes_max = 10000;
  std::vector<std::string> algorithm_pool;
  std::vector<std::string> preprocess_pool;
  std::vector<std::string> metric_pool;
  PreprocessParams preprocess;
  OptimizerParams params;

  // mine
  std::string algorithm = "de";
  std::size_t np = 20;
  std::size_t maxfes = 2000;
  std::vector<std::string> preprocessing;
  std::vector<std::string> metrics{"Supp", "Conf"};
  std::vector<double> weights;

  // compare
  std::vector<std::string> compare_files;
};

std::string error_kind(const Error& e) {
  if (dynamic_cast<const MissingFile*>(&e)) return "MissingFile";
  if (dynamic_cast<const RaggedRows*>(&e)) return "RaggedRows";
  if (dynamic_cast<const MissingCell*>(&e)) return "MissingCell";
  if (dynamic_cast<const EmptyDataset*>(&e)) return "EmptyDataset";
  if (dynamic_cast<const BudgetTooSmall*>(&e)) return "BudgetTooSmall";
  if (dynamic_cast<const AllDiscarded*>(&e)) return "AllDiscarded";
  if (dynamic_cast<const EmptySelection*>(&e)) return "EmptySelection";
  if (dynamic_cast<const LengthMismatch*>(&e)) return "LengthMismatch";
  if (dynamic_cast<const TooFewPairs*>(&e)) return "TooFewPairs";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "Error";
}

template <typename Kind, std::size_t N>
std::vector<Kind> parse_pool(const std::vector<std::string>& labels, const std::array<Kind, N>& pool,
                             const char* what) {
  if (labels.empty()) return {pool.begin(), pool.end()};
  std::vector<Kind> out;
  for (const auto& label : labels) {
    bool found = false;
    for (auto kind : pool) {
      std::string a(to_string(kind)), b(label);
      for (auto& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      for (auto& c : b) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (a == b) {
        out.push_back(kind);
        found = true;
      }
    }
    if (!found) throw InvalidArgument(std::string("unknown ") + what + ": " + label);
  }
  return out;
}

TransactionDatabase load_dataset(const CliConfig& cfg) {
  if (cfg.dataset.empty()) throw InvalidArgument("--dataset is required");
  auto db = load_csv(cfg.dataset, cfg.header);
  if (!cfg.drop.empty()) db = drop_columns(db, cfg.drop);
  return db;
}

SearchConfig make_search(const CliConfig& cfg) {
  SearchConfig s;
  s.algorithm_pool = parse_pool(cfg.algorithm_pool, kOptimizerPool, "algorithm");
  s.preprocess_pool = parse_pool(cfg.preprocess_pool, kPreprocessPool, "preprocessing method");
  s.metric_pool = parse_pool(cfg.metric_pool, kMetricPool, "metric");
  s.np_range = {cfg.np_min, cfg.np_max};
  s.maxfes_range = {cfg.maxfes_min, cfg.maxfes_max};
  s.weight_adaptation = cfg.weight_adaptation;
  s.alpha = cfg.alpha;
  s.beta = cfg.beta;
  s.max_preprocess = cfg.max_preprocess;
  s.preprocess = cfg.preprocess;
  s.inner_params = cfg.params;
  s.validate();
  return s;
}

OuterConfig make_outer(const CliConfig& cfg) {
  OuterConfig o;
  o.outer_kind = *parse_optimizer(cfg.outer);
  o.outer_np = cfg.outer_np;
  o.outer_maxfes = cfg.outer_fes;
  o.runs = cfg.runs;
  o.base_seed = cfg.seed;
  o.jobs = cfg.jobs;
  o.report_rules = cfg.report_rules;
  o.params = cfg.params;
  o.validate();
  return o;
}

void write_output(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw IoError("cannot write " + cfg.out);
  file << text;
  if (!file) throw IoError("write failed for " + cfg.out);
}

void emit(const CliConfig& cfg, const AggregateReport& report, std::ostream& out) {
  if (cfg.format == "csv") {
    std::ostringstream text;
    write_csv(report, text, cfg.timing);
    write_output(cfg, text.str(), out);
  } else {
    write_output(cfg, to_json(report, cfg.timing), out);
  }
}

std::string dataset_name(const CliConfig& cfg) { return std::filesystem::path(cfg.dataset).stem().string(); }

int cmd_validate(const CliConfig& cfg, std::ostream& out) {
  const auto db = load_dataset(cfg);
  const auto search = make_search(cfg);
  make_outer(cfg);
  std::size_t numeric = 0;
  for (const auto& a : db.attributes()) numeric += a.is_numeric();
  out << "dataset " << cfg.dataset << ": " << db.n_transactions() << " transactions, " << db.n_attributes()
      << " attributes (" << numeric << " numeric, " << db.n_attributes() - numeric << " categorical)\n";
  out << "rule dimension " << rule_dimension(db) << ", pipeline dimension " << search.dimension() << "\n";
  out << "ok\n";
  return 0;
}

int cmd_mine(const CliConfig& cfg, std::ostream& out) {
  const auto db = load_dataset(cfg);
  const auto search = make_search(cfg);

  PipelineSpec spec;
  const auto kind = parse_optimizer(cfg.algorithm);
  if (!kind) throw InvalidArgument("unknown algorithm: " + cfg.algorithm);
  spec.algorithm = *kind;
  spec.np = cfg.np;
  spec.maxfes = cfg.maxfes;
  const auto prep = cfg.preprocessing.empty() ? std::vector<PreprocessKind>{}
                                              : parse_pool(cfg.preprocessing, kPreprocessPool, "preprocessing method");
  for (auto k : kPreprocessPool) {
    if (std::find(prep.begin(), prep.end(), k) != prep.end()) spec.preprocessing.push_back(k);
  }
  if (cfg.metrics.empty()) throw EmptySelection();
  const auto metrics = parse_pool(cfg.metrics, kMetricPool, "metric");
  if (!cfg.weights.empty() && cfg.weights.size() != metrics.size()) {
    throw InvalidArgument("--weights needs one value per metric");
  }
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    spec.metrics.push_back({metrics[i], cfg.weights.empty() ? 1.0 : cfg.weights[i]});
  }
  validate_selection(spec.metrics);

  const auto result = run_pipeline(spec, db, search, cfg.seed);
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& e : result.archive.entries) {
    nlohmann::json metrics_json = nlohmann::json::object();
    for (auto k : kMetricPool) metrics_json[std::string(to_string(k))] = e.metrics[k];
    rules.push_back({{"rule", to_string(e.rule, *result.prepared)}, {"fitness", e.fitness}, {"metrics", metrics_json}});
  }
  nlohmann::json metric_list = nlohmann::json::array();
  for (const auto& m : spec.metrics) metric_list.push_back({{"metric", std::string(to_string(m.kind))}, {"weight", m.weight}});
  nlohmann::json prep_list = nlohmann::json::array();
  for (auto k : spec.preprocessing) prep_list.push_back(std::string(to_string(k)));
  const nlohmann::json doc = {{"rule_codec", kRuleCodecVersion},
                              {"seed", cfg.seed},
                              {"pipeline",
                               {{"algorithm", std::string(to_string(spec.algorithm))},
                                {"np", spec.np},
                                {"maxfes", spec.maxfes},
                                {"preprocessing", prep_list},
                                {"metrics", metric_list}}},
                              {"fitness", result.fitness},
                              {"discarded", result.discarded},
                              {"rule_count", result.archive.size()},
                              {"mean_support", result.archive.mean_support},
                              {"mean_confidence", result.archive.mean_confidence},
                              {"rules", rules}};
  write_output(cfg, doc.dump(2) + "\n", out);
  return 0;
}

int cmd_search(const CliConfig& cfg, std::ostream& out) {
  const auto db = load_dataset(cfg);
  AggregateReport report;
  report.search = make_search(cfg);
  report.outer = make_outer(cfg);
  report.outer.runs = 1;
  report.dataset = {dataset_name(cfg), db.n_transactions(), db.n_attributes()};
  report.runs.push_back(search(db, report.search, report.outer, 0));
  aggregate(report);
  emit(cfg, report, out);
  return 0;
}

int cmd_experiment(const CliConfig& cfg, std::ostream& out) {
  const auto db = load_dataset(cfg);
  const auto report = run_experiment(db, make_search(cfg), make_outer(cfg), dataset_name(cfg));
  emit(cfg, report, out);
  return 0;
}

int cmd_compare(const CliConfig& cfg, std::ostream& out) {
  const auto a = load_best_fitness(cfg.compare_files.at(0));
  const auto b = load_best_fitness(cfg.compare_files.at(1));
  const auto result = wilcoxon_signed_rank(a, b);
  const nlohmann::json doc = {{"test", "wilcoxon-signed-rank"},
                              {"alternative", "two-sided"},
                              {"method", result.exact ? "exact" : "normal-approximation"},
                              {"statistic", result.statistic},
                              {"p_value", result.p_value},
                              {"n_effective", result.n_effective},
                              {"mean_a", std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size())},
                              {"mean_b", std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size())}};
  write_output(cfg, doc.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Automated construction of numerical association rule mining pipelines", "autonarm"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Flat key = value file; keys are the long flag names", false);
  app.require_subcommand(1, 1);
  app.fallthrough();

  const auto bool_map = std::map<std::string, bool>{{"true", true}, {"false", false}, {"1", true}, {"0", false}};
  const auto* data_group = "Data";
  app.add_option("--dataset", cfg.dataset, "CSV dataset")->group(data_group);
  app.add_option("--header", cfg.header, "Whether the CSV has a header row")
      ->transform(CLI::CheckedTransformer(bool_map, CLI::ignore_case))
      ->group(data_group);
  app.add_option("--drop", cfg.drop, "Columns to drop after loading")->delimiter(',')->group(data_group);

  const auto* outer_group = "Outer search";
  app.add_option("--outer", cfg.outer, "Outer optimizer")
      ->check(CLI::IsMember({"pso", "de"}, CLI::ignore_case))
      ->group(outer_group);
  app.add_option("--runs", cfg.runs, "Independent runs of an experiment")->group(outer_group);
  app.add_option("--outer-np", cfg.outer_np, "Outer population size")->group(outer_group);
  app.add_option("--outer-fes", cfg.outer_fes, "Outer budget in pipeline evaluations")->group(outer_group);
  app.add_option("--seed", cfg.seed, "Base seed of all randomness")->group(outer_group);
  app.add_option("--jobs", cfg.jobs, "Runs executed in parallel")->check(CLI::PositiveNumber)->group(outer_group);

  const auto* space_group = "Pipeline space";
  app.add_option("--weight-adaptation", cfg.weight_adaptation, "Evolve metric weights instead of fixing them at 1")
      ->transform(CLI::CheckedTransformer(bool_map, CLI::ignore_case))
      ->group(space_group);
  app.add_option("--max-preprocess", cfg.max_preprocess, "Most preprocessing methods per pipeline")->group(space_group);
  app.add_option("--alpha", cfg.alpha, "Weight of mean support in the pipeline fitness")->group(space_group);
  app.add_option("--beta", cfg.beta, "Weight of mean confidence in the pipeline fitness")->group(space_group);
  app.add_option("--np-min", cfg.np_min, "Smallest inner population")->group(space_group);
  app.add_option("--np-max", cfg.np_max, "Largest inner population")->group(space_group);
  app.add_option("--maxfes-min", cfg.maxfes_min, "Smallest inner evaluation budget")->group(space_group);
  app.add_option("--maxfes-max", cfg.maxfes_max, "Largest inner evaluation budget")->group(space_group);
  app.add_option("--algorithm-pool", cfg.algorithm_pool, "Inner algorithms (default: all)")
      ->delimiter(',')
      ->group(space_group);
  app.add_option("--preprocess-pool", cfg.preprocess_pool, "Preprocessing methods (default: all)")
      ->delimiter(',')
      ->group(space_group);
  app.add_option("--metric-pool", cfg.metric_pool, "Metrics (default: all)")->delimiter(',')->group(space_group);

  const auto* prep_group = "Preprocessing parameters";
  app.add_option("--squash-ratio", cfg.preprocess.squash_ratio, "Fraction of rows kept by DS")->group(prep_group);
  app.add_option("--rhc-threshold", cfg.preprocess.correlation_threshold, "|r| at which RHC drops a column")
      ->group(prep_group);
  app.add_option("--dk-k", cfg.preprocess.discretize_k, "Clusters per attribute for DK")->group(prep_group);

  const auto* algo_group = "Optimizer parameters";
  app.add_option("--de-f", cfg.params.de_f, "DE scale factor")->group(algo_group);
  app.add_option("--de-cr", cfg.params.de_cr, "DE crossover rate")->group(algo_group);
  app.add_option("--pso-inertia", cfg.params.pso_inertia, "PSO inertia weight")->group(algo_group);
  app.add_option("--pso-c1", cfg.params.pso_c1, "PSO cognitive coefficient")->group(algo_group);
  app.add_option("--pso-c2", cfg.params.pso_c2, "PSO social coefficient")->group(algo_group);
  app.add_option("--pso-vmax", cfg.params.pso_vmax, "PSO velocity clamp")->group(algo_group);
  app.add_option("--ga-crossover", cfg.params.ga_crossover, "GA crossover probability")->group(algo_group);
  app.add_option("--ga-sigma", cfg.params.ga_sigma, "GA mutation deviation")->group(algo_group);
  app.add_option("--jde-tau1", cfg.params.jde_tau1, "jDE F adaptation rate")->group(algo_group);
  app.add_option("--jde-tau2", cfg.params.jde_tau2, "jDE CR adaptation rate")->group(algo_group);
  app.add_option("--shade-memory", cfg.params.shade_memory, "(i)L-SHADE history size")->group(algo_group);
  app.add_option("--shade-archive-rate", cfg.params.shade_archive_rate, "(i)L-SHADE archive rate")->group(algo_group);
  app.add_option("--lshade-pbest", cfg.params.lshade_pbest, "L-SHADE p-best rate")->group(algo_group);

  const auto* out_group = "Output";
  app.add_option("--out", cfg.out, "Output file (stdout when empty)")->group(out_group);
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}, CLI::ignore_case))
      ->group(out_group);
  app.add_option("--report-rules", cfg.report_rules, "Top rules kept per run in reports")->group(out_group);
  app.add_flag("--timing", cfg.timing, "Include wall-clock times (breaks byte-identical reports)")->group(out_group);

  auto* mine = app.add_subcommand("mine", "Single inner mining run with a fixed pipeline");
  mine->add_option("--algorithm", cfg.algorithm, "Inner algorithm");
  mine->add_option("--np", cfg.np, "Inner population size");
  mine->add_option("--maxfes", cfg.maxfes, "Inner evaluation budget");
  mine->add_option("--preprocess", cfg.preprocessing, "Preprocessing methods")->delimiter(',');
  mine->add_option("--metrics", cfg.metrics, "Metrics")->delimiter(',');
  mine->add_option("--weights", cfg.weights, "Metric weights, aligned with --metrics")->delimiter(',');
  auto* search_cmd = app.add_subcommand("search", "One outer pipeline search");
  auto* experiment = app.add_subcommand("experiment", "Multi-run experiment with aggregate statistics");
  auto* compare = app.add_subcommand("compare", "Wilcoxon signed-rank test on two reports' best fitness");
  compare->add_option("reports", cfg.compare_files, "Two JSON or CSV reports")->expected(2)->required();
  auto* validate = app.add_subcommand("validate", "Check the configuration and dataset only");

  std::vector<std::string> argv_storage{"autonarm"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  std::transform(cfg.format.begin(), cfg.format.end(), cfg.format.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*mine) return cmd_mine(cfg, out);
    if (*search_cmd) return cmd_search(cfg, out);
    if (*experiment) return cmd_experiment(cfg, out);
    if (*compare) return cmd_compare(cfg, out);
  } catch (const Error& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace autonarm
