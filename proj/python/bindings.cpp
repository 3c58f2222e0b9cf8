#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossdock/exp/archive.hpp"
#include "crossdock/exp/config_io.hpp"
#include "crossdock/exp/experiment.hpp"
#include "crossdock/exp/validation.hpp"
#include "crossdock/model/crossdock_model.hpp"
#include "crossdock/stats/comparison.hpp"
#include "crossdock/stats/quantiles.hpp"
#include "crossdock/stats/sequential.hpp"
#include "crossdock/stats/summary.hpp"

namespace py = pybind11;
using namespace crossdock;

namespace {

// Configuration arrives as YAML text; empty text means built-in defaults.
exp::ExperimentConfig load(const std::string& yaml, const std::optional<std::string>& variant,
                           const std::optional<std::uint64_t>& seed) {
  auto cfg = yaml.empty() ? exp::default_experiment_config()
                          : exp::parse_experiment_config(yaml, "<python>");
  if (variant) {
    const auto v = model::variant_from_string(*variant);
    if (!v) throw model::ConfigError("unknown variant '" + *variant + "'");
    cfg.variant = *v;
  }
  if (seed) cfg.root_seed = *seed;
  return cfg;
}

py::dict result_dict(const model::ReplicationResult& r) {
  py::dict d;
  d["replication"] = r.replication;
  d["total_usage_cost"] = r.total_usage_cost;
  d["created"] = r.created;
  d["disposed"] = r.disposed;
  d["in_system"] = r.in_system;
  d["started_service"] = r.started_service;
  d["mean_wait"] = r.mean_wait;
  d["mean_sojourn"] = r.mean_sojourn;
  d["failures"] = r.failures;
  py::list ledger;
  for (const auto& u : r.ledger) {
    py::dict e;
    e["name"] = u.name;
    e["capacity"] = u.capacity;
    e["busy_min"] = u.busy;
    e["idle_min"] = u.idle;
    e["overtime_min"] = u.overtime;
    e["uses"] = u.uses;
    ledger.append(e);
  }
  d["ledger"] = ledger;
  return d;
}

py::dict summary_dict(const stats::SummaryStats& s) {
  py::dict d;
  d["n"] = s.n;
  d["mean"] = s.mean;
  d["sd"] = s.sd;
  d["min"] = s.min;
  d["max"] = s.max;
  d["half_width"] = s.half_width;
  d["confidence"] = s.confidence;
  return d;
}

py::dict report_dict(const stats::ComparisonReport& r) {
  py::dict d;
  d["estimate"] = r.estimate;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["alpha"] = r.alpha;
  d["reject"] = r.verdict == stats::Verdict::reject;
  if (r.kind == stats::ComparisonKind::paired_means) {
    d["sd"] = r.sd;
    d["half_width"] = r.half_width;
  }
  d["report"] = stats::render_report(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Crossdock order-picking simulator";
  m.attr("__version__") = CROSSDOCK_VERSION;
  py::register_exception<model::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("default_config_yaml",
        [] { return exp::emit_experiment_config(exp::default_experiment_config()); });

  m.def(
      "run_replication",
      [](const std::string& config, std::optional<std::string> variant,
         std::optional<std::uint64_t> seed, std::uint64_t index) {
        const auto cfg = load(config, variant, seed);
        const auto model = model::CrossdockModel::build(cfg.variant, cfg.resolve(cfg.variant));
        model::ReplicationResult r;
        {
          py::gil_scoped_release release;
          r = model.run_replication(cfg.root_seed, index);
        }
        return result_dict(r);
      },
      py::arg("config") = "", py::arg("variant") = py::none(), py::arg("seed") = py::none(),
      py::arg("index") = 0);

  m.def(
      "run_experiment",
      [](const std::string& config, std::optional<std::string> variant,
         std::optional<std::string> mode, std::optional<std::uint64_t> seed, unsigned workers) {
        auto cfg = load(config, variant, seed);
        if (mode) cfg.mode = exp::parse_mode(*mode, cfg.sequential);
        auto spec = exp::make_spec(cfg);
        spec.workers = workers;
        exp::RunOutcome out;
        {
          py::gil_scoped_release release;
          out = exp::run_experiment(spec);
        }
        py::dict d = summary_dict(out.summary);
        d["costs"] = out.costs;
        d["stop_reason"] = std::string(stats::to_string(out.stop_reason));
        return d;
      },
      py::arg("config") = "", py::arg("variant") = py::none(), py::arg("mode") = py::none(),
      py::arg("seed") = py::none(), py::arg("workers") = 1);

  m.def(
      "trace_replication",
      [](const std::string& config, std::optional<std::string> variant,
         std::optional<std::uint64_t> seed, std::uint64_t index, std::optional<double> length) {
        auto cfg = load(config, variant, seed);
        if (length) cfg.model.replication_length = *length;
        const auto model = model::CrossdockModel::build(cfg.variant, cfg.resolve(cfg.variant));
        sim::TraceLog trace;
        (void)model.run_replication(cfg.root_seed, index, &trace);
        std::vector<std::tuple<double, std::string, std::string, std::string>> out;
        out.reserve(trace.events().size());
        for (const auto& e : trace.events()) out.emplace_back(e.time, e.kind, e.subject, e.text);
        return out;
      },
      py::arg("config") = "", py::arg("variant") = py::none(), py::arg("seed") = py::none(),
      py::arg("index") = 0, py::arg("length") = py::none());

  m.def(
      "validate",
      [](const std::string& config, std::optional<std::string> variant) {
        const auto report = exp::run_visual_checks(load(config, variant, std::nullopt));
        return py::make_tuple(report.passed(), report.render());
      },
      py::arg("config") = "", py::arg("variant") = py::none());

  m.def(
      "read_archive",
      [](const std::string& path) {
        const auto a = exp::read_archive_file(path);
        py::dict d;
        d["costs"] = a.costs();
        d["variant"] = std::string(model::to_string(a.config.variant));
        d["stop_reason"] = std::string(stats::to_string(a.stop_reason));
        d["footer"] = a.footer;
        d["footer_matches_rows"] = exp::footer_matches_rows(a);
        return d;
      },
      py::arg("path"));

  m.def(
      "compare_means",
      [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
        return report_dict(stats::paired_t_compare(a, b, alpha));
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);
  m.def(
      "compare_variances",
      [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
        return report_dict(stats::variance_ratio_compare(a, b, alpha));
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05);

  m.def(
      "half_width",
      [](const std::vector<double>& x, double confidence) { return stats::half_width(x, confidence); },
      py::arg("sample"), py::arg("confidence") = 0.95);
  m.def("expected_replications", &stats::expected_replications, py::arg("sd"), py::arg("target"),
        py::arg("confidence") = 0.95);
  m.def("student_t_quantile", &stats::student_t_quantile, py::arg("p"), py::arg("df"));
  m.def("fisher_f_quantile", &stats::fisher_f_quantile, py::arg("p"), py::arg("df1"),
        py::arg("df2"));
}
