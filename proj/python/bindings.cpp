#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autonarm/dataset.hpp"
#include "autonarm/error.hpp"
#include "autonarm/inner_miner.hpp"
#include "autonarm/metrics.hpp"
#include "autonarm/pipeline.hpp"
#include "autonarm/preprocess.hpp"
#include "autonarm/report.hpp"
#include "autonarm/rules.hpp"
#include "autonarm/search.hpp"

namespace py = pybind11;
using namespace autonarm;

namespace {

template <typename Kind, std::size_t N>
Kind label_to(const std::string& label, const std::array<Kind, N>& pool) {
  for (auto k : pool) {
    if (to_string(k) == label) return k;
  }
  throw py::value_error("unknown label: " + label);
}

OptimizerKind optimizer_from(const std::string& name) {
  auto k = parse_optimizer(name);
  if (!k) throw py::value_error("unknown optimizer: " + name);
  return *k;
}

template <typename Kind, std::size_t N>
std::vector<Kind> labels_to(const std::vector<std::string>& labels, const std::array<Kind, N>& pool) {
  std::vector<Kind> out;
  for (const auto& l : labels) out.push_back(label_to(l, pool));
  return out;
}

template <typename Kind>
std::vector<std::string> to_labels(const std::vector<Kind>& kinds) {
  std::vector<std::string> out;
  for (auto k : kinds) out.emplace_back(to_string(k));
  return out;
}

py::dict metrics_dict(const MetricVector& m) {
  py::dict d;
  for (auto k : kMetricPool) d[py::str(std::string(to_string(k)))] = m[k];
  return d;
}

std::vector<WeightedMetric> selection_from(const std::map<std::string, double>& weights) {
  std::vector<WeightedMetric> out;
  for (auto k : kMetricPool) {
    auto it = weights.find(std::string(to_string(k)));
    if (it != weights.end()) out.push_back({k, it->second});
  }
  if (out.size() != weights.size()) throw py::value_error("unknown metric label in selection");
  return out;
}

py::dict spec_dict(const PipelineSpec& s) {
  py::dict d;
  d["algorithm"] = std::string(to_string(s.algorithm));
  d["np"] = s.np;
  d["maxfes"] = s.maxfes;
  d["preprocessing"] = to_labels(s.preprocessing);
  py::dict w;
  for (const auto& m : s.metrics) w[py::str(std::string(to_string(m.kind)))] = m.weight;
  d["metrics"] = w;
  return d;
}

py::dict archive_dict(const RuleArchive& archive, const TransactionDatabase& db) {
  py::list rules;
  for (const auto& e : archive.entries) {
    py::dict r;
    r["rule"] = to_string(e.rule, db);
    r["fitness"] = e.fitness;
    r["metrics"] = metrics_dict(e.metrics);
    rules.append(r);
  }
  py::dict d;
  d["rules"] = rules;
  d["mean_support"] = archive.mean_support;
  d["mean_confidence"] = archive.mean_confidence;
  d["evaluations_used"] = archive.evaluations_used;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Automated numerical association rule mining pipelines";

  py::register_exception<Error>(m, "AutonarmError", PyExc_RuntimeError);

  py::class_<TransactionDatabase>(m, "Database")
      .def_static("from_rows", &TransactionDatabase::from_text, py::arg("names"), py::arg("rows"))
      .def_property_readonly("n_transactions", &TransactionDatabase::n_transactions)
      .def_property_readonly("n_attributes", &TransactionDatabase::n_attributes)
      .def_property_readonly("names",
                             [](const TransactionDatabase& db) {
                               std::vector<std::string> out;
                               for (const auto& a : db.attributes()) out.push_back(a.name);
                               return out;
                             })
      .def("is_numeric", [](const TransactionDatabase& db, std::size_t j) { return db.attribute(j).is_numeric(); })
      .def("column", &TransactionDatabase::column)
      .def("domain",
           [](const TransactionDatabase& db, std::size_t j) -> py::object {
             auto d = attribute_domain(db, j);
             if (auto* n = std::get_if<NumericDomain>(&d)) return py::make_tuple(n->min, n->max);
             return py::cast(std::get<CategoricalDomain>(d));
           })
      .def("to_csv",
           [](const TransactionDatabase& db, bool header) {
             std::ostringstream out;
             write_csv(db, out, header);
             return out.str();
           },
           py::arg("header") = true)
      .def("__eq__", [](const TransactionDatabase& a, const TransactionDatabase& b) { return a == b; });

  m.def(
      "load_csv",
      [](const std::string& path, bool header, const std::vector<std::string>& drop) {
        auto db = load_csv(path, header);
        return drop.empty() ? db : drop_columns(db, drop);
      },
      py::arg("path"), py::arg("header") = true, py::arg("drop") = std::vector<std::string>{});

  m.def("min_max", &min_max);
  m.def("z_score", &z_score);
  m.def("squash", &squash, py::arg("db"), py::arg("ratio"), py::arg("seed") = 0);
  m.def("remove_highly_correlated", &remove_highly_correlated, py::arg("db"), py::arg("threshold"));
  m.def("kmeans_discretize", &kmeans_discretize, py::arg("db"), py::arg("k"));
  m.def(
      "apply_chain",
      [](const TransactionDatabase& db, const std::vector<std::string>& methods, std::uint64_t seed) {
        return apply_chain(db, labels_to(methods, kPreprocessPool), seed);
      },
      py::arg("db"), py::arg("methods"), py::arg("seed") = 0);

  m.def("rule_dimension", &rule_dimension);
  m.def("decode_rule", [](const std::vector<double>& x, const TransactionDatabase& db) -> py::object {
    auto rule = decode_rule(x, db);
    if (!rule) return py::none();
    py::dict d;
    d["text"] = to_string(*rule, db);
    d["metrics"] = metrics_dict(evaluate_metrics(*rule, db));
    return d;
  });

  m.def(
      "optimize",
      [](const std::string& kind, const std::function<double(std::vector<double>)>& objective, std::size_t dim,
         std::size_t np, std::size_t maxfes, std::uint64_t seed) {
        const Objective wrapped = [&](std::span<const double> x) {
          return objective(std::vector<double>(x.begin(), x.end()));
        };
        auto r = optimize(optimizer_from(kind), wrapped, dim, {np, maxfes, seed});
        py::dict d;
        d["best_x"] = r.best_x;
        d["best_f"] = r.best_f;
        d["evaluations_used"] = r.evaluations_used;
        std::vector<std::pair<std::size_t, double>> trace;
        for (const auto& t : r.trace) trace.emplace_back(t.evaluation, t.fitness);
        d["trace"] = trace;
        return d;
      },
      py::arg("kind"), py::arg("objective"), py::arg("dim"), py::arg("np"), py::arg("maxfes"), py::arg("seed") = 0);

  m.def(
      "mine",
      [](const TransactionDatabase& db, const std::string& kind, std::size_t np, std::size_t maxfes, std::uint64_t seed,
         const std::map<std::string, double>& weights) {
        const auto archive = mine(db, optimizer_from(kind), {np, maxfes, seed}, selection_from(weights));
        return archive_dict(archive, db);
      },
      py::arg("db"), py::arg("kind"), py::arg("np"), py::arg("maxfes"), py::arg("seed"), py::arg("metrics"));

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_property(
          "algorithm_pool", [](const SearchConfig& c) { return to_labels(c.algorithm_pool); },
          [](SearchConfig& c, const std::vector<std::string>& v) {
            c.algorithm_pool.clear();
            for (const auto& s : v) c.algorithm_pool.push_back(optimizer_from(s));
          })
      .def_property(
          "preprocess_pool", [](const SearchConfig& c) { return to_labels(c.preprocess_pool); },
          [](SearchConfig& c, const std::vector<std::string>& v) { c.preprocess_pool = labels_to(v, kPreprocessPool); })
      .def_property(
          "metric_pool", [](const SearchConfig& c) { return to_labels(c.metric_pool); },
          [](SearchConfig& c, const std::vector<std::string>& v) { c.metric_pool = labels_to(v, kMetricPool); })
      .def_property(
          "np_range", [](const SearchConfig& c) { return std::make_pair(c.np_range.lo, c.np_range.hi); },
          [](SearchConfig& c, std::pair<std::size_t, std::size_t> r) { c.np_range = {r.first, r.second}; })
      .def_property(
          "maxfes_range", [](const SearchConfig& c) { return std::make_pair(c.maxfes_range.lo, c.maxfes_range.hi); },
          [](SearchConfig& c, std::pair<std::size_t, std::size_t> r) { c.maxfes_range = {r.first, r.second}; })
      .def_readwrite("weight_adaptation", &SearchConfig::weight_adaptation)
      .def_readwrite("alpha", &SearchConfig::alpha)
      .def_readwrite("beta", &SearchConfig::beta)
      .def_readwrite("max_preprocess", &SearchConfig::max_preprocess)
      .def_property_readonly("dimension", &SearchConfig::dimension);

  py::class_<OuterConfig>(m, "OuterConfig")
      .def(py::init<>())
      .def_property(
          "outer_kind", [](const OuterConfig& o) { return std::string(to_string(o.outer_kind)); },
          [](OuterConfig& o, const std::string& s) { o.outer_kind = optimizer_from(s); })
      .def_readwrite("outer_np", &OuterConfig::outer_np)
      .def_readwrite("outer_maxfes", &OuterConfig::outer_maxfes)
      .def_readwrite("runs", &OuterConfig::runs)
      .def_readwrite("base_seed", &OuterConfig::base_seed)
      .def_readwrite("jobs", &OuterConfig::jobs)
      .def_readwrite("report_rules", &OuterConfig::report_rules);

  m.def("map_scalar_to_pool", &map_scalar_to_pool);
  m.def("map_hyperparam", &map_hyperparam);
  m.def("decode_pipeline", [](const std::vector<double>& genes, const SearchConfig& cfg) -> py::object {
    auto spec = decode_pipeline({genes}, cfg);
    if (!spec) return py::none();
    return spec_dict(*spec);
  });
  m.def(
      "evaluate_pipeline",
      [](const std::vector<double>& genes, const TransactionDatabase& db, const SearchConfig& cfg, std::uint64_t seed) {
        const auto r = evaluate_pipeline({genes}, db, cfg, seed);
        py::dict d;
        d["fitness"] = r.fitness;
        d["discarded"] = r.discarded;
        d["spec"] = r.spec ? py::object(spec_dict(*r.spec)) : py::object(py::none());
        d["archive"] = r.prepared ? py::object(archive_dict(r.archive, *r.prepared)) : py::object(py::none());
        return d;
      },
      py::arg("genes"), py::arg("db"), py::arg("config"), py::arg("seed"));

  m.def(
      "search_json",
      [](const TransactionDatabase& db, const SearchConfig& cfg, const OuterConfig& outer, std::size_t run_index) {
        AggregateReport report;
        report.search = cfg;
        report.outer = outer;
        report.outer.runs = 1;
        report.dataset = {"", db.n_transactions(), db.n_attributes()};
        {
          py::gil_scoped_release release;
          report.runs.push_back(search(db, cfg, outer, run_index));
        }
        aggregate(report);
        return to_json(report);
      },
      py::arg("db"), py::arg("config"), py::arg("outer"), py::arg("run_index") = 0);

  m.def(
      "run_experiment_json",
      [](const TransactionDatabase& db, const SearchConfig& cfg, const OuterConfig& outer, const std::string& name) {
        AggregateReport report;
        {
          py::gil_scoped_release release;
          report = run_experiment(db, cfg, outer, name);
        }
        return to_json(report);
      },
      py::arg("db"), py::arg("config"), py::arg("outer"), py::arg("name") = "");

  m.def(
      "wilcoxon_signed_rank",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const auto r = wilcoxon_signed_rank(a, b);
        py::dict d;
        d["statistic"] = r.statistic;
        d["p_value"] = r.p_value;
        d["n_effective"] = r.n_effective;
        d["exact"] = r.exact;
        return d;
      },
      py::arg("a"), py::arg("b"));
}
