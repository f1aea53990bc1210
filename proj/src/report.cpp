#include "autonarm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "autonarm/error.hpp"
#include "json.hpp"

namespace autonarm {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank test

ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  if (a.size() < 5) throw TooFewPairs(a.size());

  std::vector<double> diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diff.push_back(d);
  }
  const std::size_t n = diff.size();
  if (n == 0) throw TooFewPairs(0);

  // Average ranks of |d|, kept doubled so they stay integral.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return std::abs(diff[i]) < std::abs(diff[j]); });
  std::vector<std::size_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]])) ++j;
    const std::size_t doubled = (i + 1) + (j + 1);  // 2 * mean of ranks i+1..j+1
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = doubled;
    const auto t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::size_t w_plus2 = 0, total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (diff[i] > 0) w_plus2 += rank2[i];
  }
  const std::size_t w_min2 = std::min(w_plus2, total2 - w_plus2);

  ComparisonResult result;
  result.n_effective = n;
  result.statistic = static_cast<double>(w_min2) / 2.0;

  if (n <= kWilcoxonExactLimit) {
    // counts[s]: number of sign patterns whose doubled positive rank sum is s.
    std::vector<double> counts(total2 + 1, 0.0);
    counts[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      reach += rank2[i];
      for (std::size_t s = reach; s >= rank2[i]; --s) {
        counts[s] += counts[s - rank2[i]];
        if (s == rank2[i]) break;
      }
    }
    double tail = 0.0;
    for (std::size_t s = 0; s <= w_min2; ++s) tail += counts[s];
    result.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
    result.exact = true;
    return result;
  }

  const auto nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  const double variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
  const double w_plus = static_cast<double>(w_plus2) / 2.0;
  const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(variance);
  result.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
  return result;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename Kind, std::size_t N>
Kind parse_label(const std::string& label, const std::array<Kind, N>& pool) {
  for (auto kind : pool) {
    if (to_string(kind) == label) return kind;
  }
  throw InvalidArgument("unknown label in report: " + label);
}

json metrics_json(const MetricVector& m) {
  json out = json::object();
  for (auto kind : kMetricPool) out[std::string(to_string(kind))] = m[kind];
  return out;
}

MetricVector metrics_from(const json& j) {
  MetricVector m;
  for (auto kind : kMetricPool) m[kind] = j.at(std::string(to_string(kind))).get<double>();
  return m;
}

json mean_std_json(const MeanStd& v) { return {{"mean", v.mean}, {"std", v.std}}; }
MeanStd mean_std_from(const json& j) { return {j.at("mean").get<double>(), j.at("std").get<double>()}; }

json optimizer_params_json(const OptimizerParams& p) {
  return {{"de_f", p.de_f},
          {"de_cr", p.de_cr},
          {"pso_inertia", p.pso_inertia},
          {"pso_c1", p.pso_c1},
          {"pso_c2", p.pso_c2},
          {"pso_vmax", p.pso_vmax},
          {"ga_crossover", p.ga_crossover},
          {"ga_sigma", p.ga_sigma},
          {"jde_tau1", p.jde_tau1},
          {"jde_tau2", p.jde_tau2},
          {"jde_f_lower", p.jde_f_lower},
          {"jde_f_upper", p.jde_f_upper},
          {"shade_memory", p.shade_memory},
          {"shade_archive_rate", p.shade_archive_rate},
          {"lshade_pbest", p.lshade_pbest},
          {"ilshade_pbest_min", p.ilshade_pbest_min},
          {"ilshade_pbest_max", p.ilshade_pbest_max},
          {"shade_min_population", p.shade_min_population}};
}

OptimizerParams optimizer_params_from(const json& j) {
  OptimizerParams p;
  j.at("de_f").get_to(p.de_f);
  j.at("de_cr").get_to(p.de_cr);
  j.at("pso_inertia").get_to(p.pso_inertia);
  j.at("pso_c1").get_to(p.pso_c1);
  j.at("pso_c2").get_to(p.pso_c2);
  j.at("pso_vmax").get_to(p.pso_vmax);
  j.at("ga_crossover").get_to(p.ga_crossover);
  j.at("ga_sigma").get_to(p.ga_sigma);
  j.at("jde_tau1").get_to(p.jde_tau1);
  j.at("jde_tau2").get_to(p.jde_tau2);
  j.at("jde_f_lower").get_to(p.jde_f_lower);
  j.at("jde_f_upper").get_to(p.jde_f_upper);
  j.at("shade_memory").get_to(p.shade_memory);
  j.at("shade_archive_rate").get_to(p.shade_archive_rate);
  j.at("lshade_pbest").get_to(p.lshade_pbest);
  j.at("ilshade_pbest_min").get_to(p.ilshade_pbest_min);
  j.at("ilshade_pbest_max").get_to(p.ilshade_pbest_max);
  j.at("shade_min_population").get_to(p.shade_min_population);
  return p;
}

template <typename Kind>
json labels_json(const std::vector<Kind>& kinds) {
  json out = json::array();
  for (auto k : kinds) out.push_back(std::string(to_string(k)));
  return out;
}

template <typename Kind, std::size_t N>
std::vector<Kind> labels_from(const json& j, const std::array<Kind, N>& pool) {
  std::vector<Kind> out;
  for (const auto& label : j) out.push_back(parse_label(label.get<std::string>(), pool));
  return out;
}

json search_json(const SearchConfig& c) {
  return {{"algorithm_pool", labels_json(c.algorithm_pool)},
          {"preprocess_pool", labels_json(c.preprocess_pool)},
          {"metric_pool", labels_json(c.metric_pool)},
          {"np_range", {c.np_range.lo, c.np_range.hi}},
          {"maxfes_range", {c.maxfes_range.lo, c.maxfes_range.hi}},
          {"weight_adaptation", c.weight_adaptation},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"max_preprocess", c.max_preprocess},
          {"preprocess_params",
           {{"squash_ratio", c.preprocess.squash_ratio},
            {"correlation_threshold", c.preprocess.correlation_threshold},
            {"discretize_k", c.preprocess.discretize_k}}},
          {"inner_params", optimizer_params_json(c.inner_params)}};
}

SearchConfig search_from(const json& j) {
  SearchConfig c;
  c.algorithm_pool = labels_from(j.at("algorithm_pool"), kOptimizerPool);
  c.preprocess_pool = labels_from(j.at("preprocess_pool"), kPreprocessPool);
  c.metric_pool = labels_from(j.at("metric_pool"), kMetricPool);
  c.np_range = {j.at("np_range").at(0).get<std::size_t>(), j.at("np_range").at(1).get<std::size_t>()};
  c.maxfes_range = {j.at("maxfes_range").at(0).get<std::size_t>(), j.at("maxfes_range").at(1).get<std::size_t>()};
  j.at("weight_adaptation").get_to(c.weight_adaptation);
  j.at("alpha").get_to(c.alpha);
  j.at("beta").get_to(c.beta);
  j.at("max_preprocess").get_to(c.max_preprocess);
  const auto& pp = j.at("preprocess_params");
  pp.at("squash_ratio").get_to(c.preprocess.squash_ratio);
  pp.at("correlation_threshold").get_to(c.preprocess.correlation_threshold);
  pp.at("discretize_k").get_to(c.preprocess.discretize_k);
  c.inner_params = optimizer_params_from(j.at("inner_params"));
  return c;
}

json outer_json(const OuterConfig& o) {
  return {{"outer_kind", std::string(to_string(o.outer_kind))},
          {"outer_np", o.outer_np},
          {"outer_maxfes", o.outer_maxfes},
          {"runs", o.runs},
          {"base_seed", o.base_seed},
          {"report_rules", o.report_rules},
          {"params", optimizer_params_json(o.params)}};
}

OuterConfig outer_from(const json& j) {
  OuterConfig o;
  o.outer_kind = parse_label(j.at("outer_kind").get<std::string>(), kOptimizerPool);
  j.at("outer_np").get_to(o.outer_np);
  j.at("outer_maxfes").get_to(o.outer_maxfes);
  j.at("runs").get_to(o.runs);
  j.at("base_seed").get_to(o.base_seed);
  j.at("report_rules").get_to(o.report_rules);
  o.params = optimizer_params_from(j.at("params"));
  return o;
}

json spec_json(const PipelineSpec& s) {
  json metrics = json::array();
  for (const auto& m : s.metrics) metrics.push_back({{"metric", std::string(to_string(m.kind))}, {"weight", m.weight}});
  return {{"algorithm", std::string(to_string(s.algorithm))},
          {"np", s.np},
          {"maxfes", s.maxfes},
          {"preprocessing", labels_json(s.preprocessing)},
          {"metrics", metrics}};
}

PipelineSpec spec_from(const json& j) {
  PipelineSpec s;
  s.algorithm = parse_label(j.at("algorithm").get<std::string>(), kOptimizerPool);
  j.at("np").get_to(s.np);
  j.at("maxfes").get_to(s.maxfes);
  s.preprocessing = labels_from(j.at("preprocessing"), kPreprocessPool);
  for (const auto& m : j.at("metrics")) {
    s.metrics.push_back({parse_label(m.at("metric").get<std::string>(), kMetricPool), m.at("weight").get<double>()});
  }
  return s;
}

json run_json(const RunReport& r, bool include_timing) {
  json trace = json::array();
  for (const auto& t : r.fitness_trace) trace.push_back({t.evaluation, t.fitness});
  json rules = json::array();
  for (const auto& rule : r.top_rules) {
    rules.push_back({{"rule", rule.text}, {"fitness", rule.fitness}, {"metrics", metrics_json(rule.metrics)}});
  }
  json out = {{"run", r.run_index},
              {"seed", r.run_seed},
              {"best_fitness", r.best_fitness},
              {"best_evaluation", r.best_evaluation},
              {"best_evaluation_seed", r.best_evaluation_seed},
              {"rule_count", r.rule_count},
              {"mean_support", r.mean_support},
              {"mean_confidence", r.mean_confidence},
              {"evaluations", r.evaluations},
              {"discarded", r.discarded},
              {"genotype", r.best_genotype.genes},
              {"pipeline", spec_json(r.best_spec)},
              {"trace", trace},
              {"rules", rules}};
  if (include_timing) out["wall_time_s"] = r.wall_time;
  return out;
}

RunReport run_from(const json& j) {
  RunReport r;
  j.at("run").get_to(r.run_index);
  j.at("seed").get_to(r.run_seed);
  j.at("best_fitness").get_to(r.best_fitness);
  j.at("best_evaluation").get_to(r.best_evaluation);
  j.at("best_evaluation_seed").get_to(r.best_evaluation_seed);
  j.at("rule_count").get_to(r.rule_count);
  j.at("mean_support").get_to(r.mean_support);
  j.at("mean_confidence").get_to(r.mean_confidence);
  j.at("evaluations").get_to(r.evaluations);
  j.at("discarded").get_to(r.discarded);
  j.at("genotype").get_to(r.best_genotype.genes);
  r.best_spec = spec_from(j.at("pipeline"));
  for (const auto& t : j.at("trace")) r.fitness_trace.push_back({t.at(0).get<std::size_t>(), t.at(1).get<double>()});
  for (const auto& rule : j.at("rules")) {
    r.top_rules.push_back(
        {rule.at("rule").get<std::string>(), metrics_from(rule.at("metrics")), rule.at("fitness").get<double>()});
  }
  if (j.contains("wall_time_s")) j.at("wall_time_s").get_to(r.wall_time);
  return r;
}

}  // namespace

std::string to_json(const AggregateReport& report, bool include_timing) {
  json metrics = json::object();
  for (const auto& [name, usage] : report.metrics) {
    json entry = {{"used_in", usage.used_in}};
    entry["mean"] = usage.weight ? json(usage.weight->mean) : json(nullptr);
    entry["std"] = usage.weight ? json(usage.weight->std) : json(nullptr);
    metrics[name] = entry;
  }
  json runs = json::array();
  for (const auto& r : report.runs) runs.push_back(run_json(r, include_timing));

  json out = {
      {"format", "autonarm-report/1"},
      {"rule_codec", kRuleCodecVersion},
      {"metric_convention", "fractional supports; Cover = s(Y); Amp = Conf - s(Y); zero denominators give 0"},
      {"dataset",
       {{"name", report.dataset.name},
        {"transactions", report.dataset.transactions},
        {"attributes", report.dataset.attributes}}},
      {"search", search_json(report.search)},
      {"outer", outer_json(report.outer)},
      {"summary",
       {{"best_fitness", mean_std_json(report.best_fitness)},
        {"rule_count", mean_std_json(report.rule_count)},
        {"np", mean_std_json(report.np)},
        {"maxfes", mean_std_json(report.maxfes)},
        {"preprocessing", report.preprocessing_frequency},
        {"preprocessing_combinations", report.preprocessing_combinations},
        {"algorithms", report.algorithm_frequency},
        {"metric_weights", metrics}}},
      {"runs", runs}};
  return out.dump(2) + "\n";
}

AggregateReport aggregate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  try {
    AggregateReport r;
    const auto& d = j.at("dataset");
    d.at("name").get_to(r.dataset.name);
    d.at("transactions").get_to(r.dataset.transactions);
    d.at("attributes").get_to(r.dataset.attributes);
    r.search = search_from(j.at("search"));
    r.outer = outer_from(j.at("outer"));
    for (const auto& run : j.at("runs")) r.runs.push_back(run_from(run));

    const auto& s = j.at("summary");
    r.best_fitness = mean_std_from(s.at("best_fitness"));
    r.rule_count = mean_std_from(s.at("rule_count"));
    r.np = mean_std_from(s.at("np"));
    r.maxfes = mean_std_from(s.at("maxfes"));
    s.at("preprocessing").get_to(r.preprocessing_frequency);
    s.at("preprocessing_combinations").get_to(r.preprocessing_combinations);
    s.at("algorithms").get_to(r.algorithm_frequency);
    for (const auto& [name, entry] : s.at("metric_weights").items()) {
      MetricUsage usage;
      entry.at("used_in").get_to(usage.used_in);
      if (!entry.at("mean").is_null()) usage.weight = MeanStd{entry.at("mean").get<double>(), entry.at("std").get<double>()};
      r.metrics[name] = usage;
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const AggregateReport& report, std::ostream& out, bool include_timing) {
  out << "run,seed,best_fitness,rule_count,mean_support,mean_confidence,algorithm,np,maxfes,preprocessing,metrics,"
         "weights,evaluations,discarded";
  if (include_timing) out << ",wall_time_s";
  out << '\n';
  for (const auto& r : report.runs) {
    std::string metrics, weights;
    for (const auto& m : r.best_spec.metrics) {
      if (!metrics.empty()) {
        metrics += '+';
        weights += '+';
      }
      metrics += to_string(m.kind);
      weights += real17(m.weight);
    }
    out << r.run_index << ',' << r.run_seed << ',' << real17(r.best_fitness) << ',' << r.rule_count << ','
        << real17(r.mean_support) << ',' << real17(r.mean_confidence) << ',' << to_string(r.best_spec.algorithm) << ','
        << r.best_spec.np << ',' << r.best_spec.maxfes << ',' << preprocessing_label(r.best_spec.preprocessing) << ','
        << metrics << ',' << weights << ',' << r.evaluations << ',' << r.discarded;
    if (include_timing) out << ',' << real17(r.wall_time);
    out << '\n';
  }
}

void emit_report(const AggregateReport& report, ReportFormat format, const std::filesystem::path& path,
                 bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  if (format == ReportFormat::Json) {
    out << to_json(report, include_timing);
  } else {
    write_csv(report, out, include_timing);
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<double> load_best_fitness(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<double> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    for (const auto& run : aggregate_from_json(text).runs) out.push_back(run.best_fitness);
    return out;
  }

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) header.push_back(cell);
  }
  const auto column = std::find(header.begin(), header.end(), "best_fitness");
  if (column == header.end()) throw InvalidArgument(path.string() + " has no best_fitness column");
  const auto index = static_cast<std::size_t>(column - header.begin());
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t i = 0; i <= index && std::getline(cells, cell, ','); ++i) {
    }
    out.push_back(std::stod(cell));
  }
  return out;
}

}  // namespace autonarm
