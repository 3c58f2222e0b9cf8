#include "crossdock/exp/validation.hpp"

#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "crossdock/model/crossdock_model.hpp"

namespace crossdock::exp {

bool ValidationReport::passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string ValidationReport::render() const {
  std::string out;
  for (const auto& c : checks) {
    out += fmt::format("[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    if (!c.passed && !c.excerpt.empty()) out += c.excerpt;
  }
  out += passed() ? "visual checks passed\n" : "visual checks FAILED\n";
  return out;
}

namespace {

std::string excerpt_for(const std::vector<sim::TraceEvent>& events, const std::string& subject) {
  std::string out;
  int shown = 0;
  for (const auto& e : events) {
    if (e.subject != subject) continue;
    out += "    " + sim::format_trace_line(e) + "\n";
    if (++shown == 20) break;
  }
  return out;
}

model::ModelConfig reduced_model(const ExperimentConfig& config, const ValidationOptions& opt) {
  model::ModelConfig m = config.resolve(config.variant);
  m.replication_length = opt.reduced_length;
  std::vector<double> weights = m.order_mix.weights();
  double kept = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i >= opt.reduced_types) weights[i] = 0.0;
    kept += weights[i];
  }
  if (kept > 0.0) {
    for (auto& w : weights) w /= kept;
  } else {
    // Every kept type had zero weight; fall back to an even split.
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = i < opt.reduced_types ? 1.0 / static_cast<double>(opt.reduced_types) : 0.0;
    }
  }
  m.order_mix = rng::Discrete(std::move(weights));
  return m;
}

}  // namespace

std::string check_forward_routing(const std::vector<sim::TraceEvent>& events, bool buffered) {
  static const std::vector<std::string> with_buffer = {
      "create", "buffer-start", "buffer-end", "enqueue", "start-service", "end-service", "dispose"};
  static const std::vector<std::string> without_buffer = {"create", "enqueue", "start-service",
                                                          "end-service", "dispose"};
  const auto& expected = buffered ? with_buffer : without_buffer;

  struct Progress {
    std::size_t stage = 0;
    double last_time = 0.0;
  };
  std::unordered_map<std::string, Progress> orders;
  for (const auto& e : events) {
    if (e.subject.rfind("order-", 0) != 0) continue;
    auto& p = orders[e.subject];
    if (p.stage >= expected.size() || e.kind != expected[p.stage]) {
      return fmt::format("{} at t={:.6f}: saw '{}' where '{}' was expected", e.subject, e.time,
                         e.kind, p.stage < expected.size() ? expected[p.stage] : "nothing");
    }
    if (p.stage > 0 && e.time < p.last_time) {
      return fmt::format("{} at t={:.6f}: '{}' went back in time", e.subject, e.time, e.kind);
    }
    p.last_time = e.time;
    ++p.stage;
  }
  return {};
}

ValidationReport run_visual_checks(const ExperimentConfig& config, const ValidationOptions& opt) {
  ValidationReport report;
  const model::Variant variant = config.variant;
  const model::ModelConfig reduced = reduced_model(config, opt);

  // (a) and (b) share one traced replication of the reduced scenario.
  {
    const auto model = model::CrossdockModel::build(variant, reduced);
    sim::TraceLog trace;
    const auto result = model.run_replication(config.root_seed, 0, &trace);

    std::set<std::string> seen;
    for (const auto& e : trace.events()) {
      if (e.kind == "create") seen.insert(e.text.substr(5, 4));  // "type XXXX point ..."
    }
    std::set<std::string> configured;
    for (std::size_t i = 0; i < reduced.order_mix.size(); ++i) {
      if (reduced.order_mix.weights()[i] > 0.0) {
        configured.emplace(to_string(static_cast<model::OrderType>(i)));
      }
    }
    CheckResult a{"(a) order types released", seen == configured, {}, {}};
    std::string names;
    for (const auto& s : seen) names += (names.empty() ? "" : " ") + s;
    a.detail = fmt::format("{} distinct types in trace ({}); {} configured; {} orders created",
                           seen.size(), names, configured.size(), result.created);
    report.checks.push_back(std::move(a));

    const std::string violation = check_forward_routing(trace.events(), model.has_buffer());
    CheckResult b{"(b) forward processing sequence", violation.empty(), {}, {}};
    if (violation.empty()) {
      b.detail = fmt::format("{} trace events, every order moves forward only", trace.events().size());
    } else {
      b.detail = violation;
      b.excerpt = excerpt_for(trace.events(), violation.substr(0, violation.find(' ')));
    }
    report.checks.push_back(std::move(b));
  }

  // (c) fixed batch conservation.
  {
    model::ModelConfig batch = reduced;
    batch.max_orders = opt.fixed_batch;
    const auto model = model::CrossdockModel::build(variant, batch);
    sim::TraceLog trace;
    const auto r = model.run_replication(config.root_seed, 0, &trace);
    const bool ok = r.created == opt.fixed_batch && r.disposed == opt.fixed_batch &&
                    r.in_system == 0 && trace.count("create") == opt.fixed_batch &&
                    trace.count("dispose") == opt.fixed_batch;
    CheckResult c{"(c) fixed batch created = processed = disposed", ok,
                  fmt::format("scheduled {}, created {}, started {}, disposed {}, in system {}",
                              opt.fixed_batch, r.created, r.started_service, r.disposed,
                              r.in_system),
                  {}};
    if (!ok) {
      const auto& ev = trace.events();
      for (std::size_t i = ev.size() > 20 ? ev.size() - 20 : 0; i < ev.size(); ++i) {
        c.excerpt += "    " + sim::format_trace_line(ev[i]) + "\n";
      }
    }
    report.checks.push_back(std::move(c));
  }

  // (d) forced variation: inflate service times, compare waits on the same streams.
  {
    model::ModelConfig baseline = reduced;
    baseline.shared_stream = false;
    model::ModelConfig inflated = baseline;
    for (auto* t : {&inflated.manual_pick, &inflated.auto_dispense}) {
      t->min *= opt.inflation;
      t->mode *= opt.inflation;
      t->max *= opt.inflation;
    }
    const auto base_model = model::CrossdockModel::build(variant, baseline);
    const auto infl_model = model::CrossdockModel::build(variant, inflated);
    double base_wait = 0.0;
    double infl_wait = 0.0;
    for (std::uint64_t i = 0; i < opt.variation_replications; ++i) {
      base_wait += base_model.run_replication(config.root_seed, i).mean_wait;
      infl_wait += infl_model.run_replication(config.root_seed, i).mean_wait;
    }
    const auto reps = static_cast<double>(opt.variation_replications);
    base_wait /= reps;
    infl_wait /= reps;
    report.checks.push_back(CheckResult{
        "(d) forced variation raises queue wait", infl_wait > base_wait,
        fmt::format("mean wait {:.4f} min baseline vs {:.4f} min with service times x{:g} over {} "
                    "paired replications",
                    base_wait, infl_wait, opt.inflation, opt.variation_replications),
        {}});
  }
  return report;
}

}  // namespace crossdock::exp
