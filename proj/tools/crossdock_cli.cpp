// crossdock: command-line harness for the crossdock order-picking simulator.
//
//   crossdock run      --config c.yaml --variant base --mode fixed:500 --out run.csv
//   crossdock compare  a.csv b.csv --alpha 0.05 [--kind means|variances|both]
//   crossdock validate --config c.yaml
//   crossdock plan     --archive pilot.csv --target 0.5
//   crossdock trace    --config c.yaml --replication 0 --out trace.log
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure,
// 3 validation-assertion failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "crossdock/exp/archive.hpp"
#include "crossdock/exp/config_io.hpp"
#include "crossdock/exp/experiment.hpp"
#include "crossdock/exp/planning.hpp"
#include "crossdock/exp/validation.hpp"
#include "crossdock/model/crossdock_model.hpp"
#include "crossdock/sim/trace.hpp"
#include "crossdock/stats/comparison.hpp"

namespace {

using namespace crossdock;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;
constexpr int kValidationFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::string variant;
  std::string mode;
  std::optional<double> target;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 1;
};

void add_model_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--config", o.config_path, "YAML configuration file (defaults built in)");
  cmd.add_option("--variant", o.variant, "Model variant")
      ->check(CLI::IsMember({"base", "buffered", "buffered-crn"}));
  cmd.add_option("--seed", o.seed, "Root random-number seed");
}

// Loads the configuration and applies command-line overrides.
exp::ExperimentConfig resolve_config(const CommonOptions& o) {
  exp::ExperimentConfig cfg = o.config_path.empty() ? exp::default_experiment_config()
                                                    : exp::load_experiment_config(o.config_path);
  if (!o.variant.empty()) cfg.variant = *model::variant_from_string(o.variant);
  if (o.seed) cfg.root_seed = *o.seed;
  if (o.target) cfg.sequential.target_half_width = *o.target;
  if (o.cap) cfg.sequential.replication_cap = *o.cap;
  try {
    cfg.sequential.validate();
  } catch (const std::invalid_argument& e) {
    throw model::ConfigError(e.what());
  }
  if (!o.mode.empty()) {
    cfg.mode = exp::parse_mode(o.mode, cfg.sequential);
  } else if (std::holds_alternative<stats::SequentialConfig>(cfg.mode)) {
    cfg.mode = cfg.sequential;
  }
  // Surface variant/buffer mismatches before any work starts.
  model::validate(cfg.resolve(cfg.variant), cfg.variant);
  return cfg;
}

std::string optional_number(const std::optional<double>& x) {
  return x ? fmt::format("{:.6g}", *x) : std::string("absent");
}

int cmd_run(const CommonOptions& o) {
  const auto cfg = resolve_config(o);
  auto spec = exp::make_spec(cfg);
  spec.workers = o.workers;
  const std::string out_path = o.out.empty() ? "crossdock-run.csv" : o.out;

  std::ofstream file(out_path);
  if (!file) throw std::runtime_error(fmt::format("{}: cannot open for writing", out_path));

  // Resource names come from the model layout; one throwaway replication
  // would be wasteful, so derive them the same way the model does.
  std::vector<std::string> names;
  for (int p = 1; p <= spec.model.picking_points; ++p) {
    for (auto cls : {model::ResourceClass::automated, model::ResourceClass::skilled,
                     model::ResourceClass::unskilled}) {
      names.push_back(fmt::format("P{}.{}", p, model::to_string(cls)));
    }
  }
  exp::ArchiveWriter writer(file, cfg, names);
  const auto outcome =
      exp::run_experiment(spec, [&](const model::ReplicationResult& r) { writer.write_row(r); });
  writer.write_footer(outcome.summary, outcome.stop_reason);

  const auto& s = outcome.summary;
  std::cout << fmt::format("variant:      {}\n", model::to_string(cfg.variant));
  std::cout << fmt::format("mode:         {}\n", exp::format_mode(cfg.mode));
  std::cout << fmt::format("replications: {}\n", s.n);
  std::cout << fmt::format("mean TUC:     {:.6f}\n", s.mean);
  std::cout << fmt::format("sd:           {}\n", optional_number(s.sd));
  std::cout << fmt::format("{:.3f} CI half-width: {}\n", s.confidence, optional_number(s.half_width));
  std::cout << fmt::format("stop reason:  {}\n", stats::to_string(outcome.stop_reason));
  std::cout << fmt::format("wall time:    {:.3f} s\n", outcome.wall_seconds);
  std::cout << fmt::format("archive:      {}\n", out_path);
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                std::optional<double> alpha_opt, const std::string& kind, const std::string& out) {
  const auto a = exp::read_archive_file(path_a);
  const auto b = exp::read_archive_file(path_b);
  const double alpha = alpha_opt.value_or(a.config.alpha);
  const auto ca = a.costs();
  const auto cb = b.costs();

  std::string text;
  std::string machine;
  if (kind == "means" || kind == "both") {
    if (ca.size() != cb.size()) {
      throw std::runtime_error(fmt::format(
          "paired-t needs equal replication counts ({} has {}, {} has {})", path_a, ca.size(),
          path_b, cb.size()));
    }
    const auto r = stats::paired_t_compare(ca, cb, alpha);
    text += stats::render_report(r);
    machine += stats::render_delimited(r);
  }
  if (kind == "variances" || kind == "both") {
    const auto r = stats::variance_ratio_compare(ca, cb, alpha);
    if (!text.empty()) text += "\n";
    text += stats::render_report(r);
    machine += stats::render_delimited(r);
  }
  std::cout << text;
  if (!out.empty()) {
    std::ofstream file(out);
    file << machine;
    if (!file) throw std::runtime_error(fmt::format("{}: write failed", out));
  }
  return 0;
}

int cmd_validate(const CommonOptions& o) {
  const auto cfg = resolve_config(o);
  const auto report = exp::run_visual_checks(cfg);
  std::cout << report.render();
  return report.passed() ? 0 : kValidationFailed;
}

int cmd_plan(const std::string& archive, std::optional<double> sd, std::optional<double> target,
             double confidence, const CommonOptions& o) {
  if (!target) throw UsageError("plan: --target is required");
  if (archive.empty() == !sd) throw UsageError("plan: give exactly one of --archive or --sd");
  exp::PlanEstimate plan;
  exp::ExperimentConfig timing_cfg;
  if (!archive.empty()) {
    const auto pilot = exp::read_archive_file(archive);
    plan = exp::plan_from_archive(pilot, *target, confidence);
    timing_cfg = pilot.config;
  } else {
    plan = exp::plan_from_sd(*sd, *target, confidence);
    timing_cfg = resolve_config(o);
  }
  exp::attach_timing(plan, timing_cfg);
  std::cout << fmt::format("sd:                     {:.6g}\n", plan.sd);
  if (plan.pilot_n) std::cout << fmt::format("pilot replications:     {}\n", *plan.pilot_n);
  std::cout << fmt::format("target half-width:      {:.6g} at {:.3f}\n", plan.target, plan.confidence);
  std::cout << fmt::format("estimated replications: {}\n", plan.replications);
  std::cout << fmt::format("per replication:        {:.3f} ms\n", *plan.seconds_per_replication * 1e3);
  std::cout << fmt::format("estimated wall time:    {:.1f} s\n", *plan.estimated_seconds);
  return 0;
}

int cmd_trace(const CommonOptions& o, std::uint64_t replication, std::optional<double> length) {
  auto cfg = resolve_config(o);
  if (length) cfg.model.replication_length = *length;
  const auto model = model::CrossdockModel::build(cfg.variant, cfg.resolve(cfg.variant));
  sim::TraceLog trace;
  const auto result = model.run_replication(cfg.root_seed, replication, &trace);
  if (o.out.empty()) {
    trace.write(std::cout);
  } else {
    std::ofstream file(o.out);
    trace.write(file);
    if (!file) throw std::runtime_error(fmt::format("{}: write failed", o.out));
    std::cout << fmt::format("{} trace lines, {} created, {} disposed, TUC {:.6f} -> {}\n",
                             trace.events().size(), result.created, result.disposed,
                             result.total_usage_cost, o.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossdock order-picking simulator and sequential-sampling harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CROSSDOCK_VERSION);

  CommonOptions run_opt;
  auto* run = app.add_subcommand("run", "Run replications and write an archive");
  add_model_options(*run, run_opt);
  run->add_option("--mode", run_opt.mode, "fixed:N or sequential");
  run->add_option("--target", run_opt.target, "Target CI half-width for sequential mode");
  run->add_option("--cap", run_opt.cap, "Replication cap for sequential mode");
  run->add_option("--out", run_opt.out, "Archive path (default crossdock-run.csv)");
  run->add_option("--workers", run_opt.workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string cmp_a;
  std::string cmp_b;
  std::optional<double> cmp_alpha;
  std::string cmp_kind = "both";
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Paired-t and variance-ratio comparison of two archives");
  compare->add_option("archive_a", cmp_a)->required();
  compare->add_option("archive_b", cmp_b)->required();
  compare->add_option("--alpha", cmp_alpha, "Significance level (default from archive A)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  compare->add_option("--kind", cmp_kind)->check(CLI::IsMember({"means", "variances", "both"}));
  compare->add_option("--out", cmp_out, "Write key,value results here");

  CommonOptions val_opt;
  auto* validate = app.add_subcommand("validate", "Run the visual-check protocol in trace mode");
  add_model_options(*validate, val_opt);

  CommonOptions plan_opt;
  std::string plan_archive;
  std::optional<double> plan_sd;
  double plan_confidence = 0.95;
  auto* plan = app.add_subcommand("plan", "Estimate replications needed for a target half-width");
  add_model_options(*plan, plan_opt);
  plan->add_option("--archive", plan_archive, "Pilot run archive");
  plan->add_option("--sd", plan_sd, "Known standard deviation of the measure");
  plan->add_option("--target", plan_opt.target, "Target half-width");
  plan->add_option("--confidence", plan_confidence)->check(CLI::Range(1e-9, 1.0 - 1e-9));

  CommonOptions trace_opt;
  std::uint64_t trace_rep = 0;
  std::optional<double> trace_length;
  auto* trace = app.add_subcommand("trace", "Write the event trace of one replication");
  add_model_options(*trace, trace_opt);
  trace->add_option("--replication", trace_rep, "Replication index");
  trace->add_option("--length", trace_length, "Override replication length (minutes)");
  trace->add_option("--out", trace_opt.out, "Trace file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*compare) return cmd_compare(cmp_a, cmp_b, cmp_alpha, cmp_kind, cmp_out);
    if (*validate) return cmd_validate(val_opt);
    if (*plan) return cmd_plan(plan_archive, plan_sd, plan_opt.target, plan_confidence, plan_opt);
    if (*trace) return cmd_trace(trace_opt, trace_rep, trace_length);
  } catch (const model::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
