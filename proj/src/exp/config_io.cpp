#include "crossdock/exp/config_io.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace crossdock::exp {

using model::ConfigError;

RunMode parse_mode(const std::string& text, const stats::SequentialConfig& sequential) {
  if (text == "sequential") return sequential;
  constexpr std::string_view prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string_view digits = std::string_view(text).substr(prefix.size());
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && n >= 1) return FixedMode{n};
  }
  throw ConfigError(fmt::format("mode must be 'fixed:N' with N >= 1 or 'sequential' (got '{}')", text));
}

std::string format_mode(const RunMode& mode) {
  if (const auto* fixed = std::get_if<FixedMode>(&mode)) {
    return fmt::format("fixed:{}", fixed->replications);
  }
  return "sequential";
}

model::ModelConfig ExperimentConfig::resolve(model::Variant v) const {
  model::ModelConfig m = model;
  if (v == model::Variant::base) {
    m.buffer_delay.reset();
  } else {
    if (!buffer_delay) {
      throw ConfigError(fmt::format("buffer_delay_min: required by the {} variant", to_string(v)));
    }
    m.buffer_delay = buffer_delay;
  }
  return m;
}

ExperimentConfig default_experiment_config() { return ExperimentConfig{}; }

namespace {

// Reads typed values out of a YAML tree and reports problems with the
// 1-based line of the offending node.
class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
    const auto mark = at.Mark();
    if (mark.line >= 0) throw ConfigError(fmt::format("{}:{}: {}", origin_, mark.line + 1, message));
    throw ConfigError(fmt::format("{}: {}", origin_, message));
  }

  void allow_keys(const YAML::Node& map, std::initializer_list<std::string_view> keys,
                  std::string_view section) const {
    if (!map.IsMap()) fail(map, fmt::format("{} must be a mapping", section));
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      bool known = false;
      for (const auto k : keys) known = known || k == key;
      if (!known) fail(kv.first, fmt::format("unknown key '{}' in {}", key, section));
    }
  }

  double real(const YAML::Node& node, std::string_view what) const {
    if (!node.IsScalar()) fail(node, fmt::format("{} must be a number", what));
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, fmt::format("{} must be a number (got '{}')", what, node.Scalar()));
    }
  }

  std::uint64_t unsigned_integer(const YAML::Node& node, std::string_view what) const {
    if (!node.IsScalar()) fail(node, fmt::format("{} must be a non-negative integer", what));
    const std::string& s = node.Scalar();
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(node, fmt::format("{} must be a non-negative integer (got '{}')", what, s));
    }
    return v;
  }

  int positive_int(const YAML::Node& node, std::string_view what) const {
    const auto v = unsigned_integer(node, what);
    if (v < 1 || v > 1'000'000) fail(node, fmt::format("{} must be a positive integer", what));
    return static_cast<int>(v);
  }

  bool boolean(const YAML::Node& node, std::string_view what) const {
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(node, fmt::format("{} must be true or false", what));
    }
  }

  std::string text(const YAML::Node& node, std::string_view what) const {
    if (!node.IsScalar()) fail(node, fmt::format("{} must be a string", what));
    return node.Scalar();
  }

  rng::Triangular triangle(const YAML::Node& node, std::string_view what) const {
    allow_keys(node, {"min", "mode", "max"}, what);
    for (const char* k : {"min", "mode", "max"}) {
      if (!node[k]) fail(node, fmt::format("{} needs min, mode and max", what));
    }
    rng::Triangular t{real(node["min"], what), real(node["mode"], what), real(node["max"], what)};
    try {
      rng::validate(t, std::string(what));
    } catch (const std::invalid_argument& e) {
      fail(node, e.what());
    }
    return t;
  }

  sim::CostRates rates(const YAML::Node& node, std::string_view what) const {
    allow_keys(node, {"busy_per_hour", "idle_per_hour", "per_use"}, what);
    sim::CostRates r;
    if (node["busy_per_hour"]) r.busy_per_hour = real(node["busy_per_hour"], what);
    if (node["idle_per_hour"]) r.idle_per_hour = real(node["idle_per_hour"], what);
    if (node["per_use"]) r.per_use = real(node["per_use"], what);
    return r;
  }

 private:
  std::string origin_;
};

void read_model(const Reader& rd, const YAML::Node& m, ExperimentConfig& out) {
  rd.allow_keys(m,
                {"replication_length_min", "picking_points", "staffing", "unskilled_time_factor",
                 "shifts", "arrivals", "order_mix", "manual_pick_min", "auto_dispense_min",
                 "buffer_delay_min", "failure", "costs_gbp", "shared_stream"},
                "model");
  auto& mc = out.model;
  if (m["replication_length_min"]) {
    mc.replication_length = rd.real(m["replication_length_min"], "replication_length_min");
  }
  if (m["picking_points"]) mc.picking_points = rd.positive_int(m["picking_points"], "picking_points");
  if (const auto s = m["staffing"]) {
    rd.allow_keys(s, {"automated", "skilled", "unskilled"}, "staffing");
    if (s["automated"]) mc.staffing.automated = rd.positive_int(s["automated"], "staffing.automated");
    if (s["skilled"]) mc.staffing.skilled = rd.positive_int(s["skilled"], "staffing.skilled");
    if (s["unskilled"]) mc.staffing.unskilled = rd.positive_int(s["unskilled"], "staffing.unskilled");
  }
  if (m["unskilled_time_factor"]) {
    mc.unskilled_time_factor = rd.real(m["unskilled_time_factor"], "unskilled_time_factor");
  }
  if (const auto sh = m["shifts"]) {
    rd.allow_keys(sh, {"day_length_min", "windows_min"}, "shifts");
    double day = 1440.0;
    if (sh["day_length_min"]) day = rd.real(sh["day_length_min"], "shifts.day_length_min");
    std::vector<sim::ShiftWindow> windows = mc.shifts.windows();
    if (const auto ws = sh["windows_min"]) {
      if (!ws.IsSequence()) rd.fail(ws, "shifts.windows_min must be a list of [start, duration] pairs");
      windows.clear();
      for (const auto& w : ws) {
        if (!w.IsSequence() || w.size() != 2) rd.fail(w, "each shift window is [start, duration]");
        windows.push_back({rd.real(w[0], "window start"), rd.real(w[1], "window duration")});
      }
    }
    try {
      mc.shifts = sim::ShiftSchedule(std::move(windows), day);
    } catch (const std::invalid_argument& e) {
      rd.fail(sh, e.what());
    }
  }
  if (const auto a = m["arrivals"]) {
    rd.allow_keys(a, {"mean_interarrival_min", "max_orders"}, "arrivals");
    if (a["mean_interarrival_min"]) {
      mc.arrival.mean = rd.real(a["mean_interarrival_min"], "arrivals.mean_interarrival_min");
      if (!(mc.arrival.mean > 0.0)) rd.fail(a["mean_interarrival_min"], "arrivals.mean_interarrival_min must be > 0");
    }
    if (const auto k = a["max_orders"]; k && !k.IsNull()) {
      mc.max_orders = rd.unsigned_integer(k, "arrivals.max_orders");
    } else if (k) {
      mc.max_orders.reset();
    }
  }
  if (const auto mix = m["order_mix"]) {
    rd.allow_keys(mix, {"MIFQ", "MIMQ", "FIFQ", "FIMQ", "RIRQ"}, "order_mix");
    std::vector<double> weights(model::kOrderTypeCount, 0.0);
    for (std::size_t i = 0; i < model::kOrderTypeCount; ++i) {
      const std::string key(to_string(static_cast<model::OrderType>(i)));
      if (mix[key]) weights[i] = rd.real(mix[key], "order_mix." + key);
    }
    rng::Discrete d(std::move(weights));
    try {
      rng::validate(d, "order_mix");
    } catch (const std::invalid_argument& e) {
      rd.fail(mix, e.what());
    }
    mc.order_mix = std::move(d);
  }
  if (m["manual_pick_min"]) mc.manual_pick = rd.triangle(m["manual_pick_min"], "manual_pick_min");
  if (m["auto_dispense_min"]) mc.auto_dispense = rd.triangle(m["auto_dispense_min"], "auto_dispense_min");
  if (const auto b = m["buffer_delay_min"]) {
    if (b.IsNull()) {
      out.buffer_delay.reset();
    } else {
      out.buffer_delay = rd.triangle(b, "buffer_delay_min");
    }
  }
  if (const auto f = m["failure"]) {
    if (f.IsNull()) {
      mc.failure.reset();
    } else {
      rd.allow_keys(f, {"mean_uptime_min", "repair_min"}, "failure");
      if (!f["mean_uptime_min"] || !f["repair_min"]) rd.fail(f, "failure needs mean_uptime_min and repair_min");
      model::FailureSpec spec;
      spec.uptime.mean = rd.real(f["mean_uptime_min"], "failure.mean_uptime_min");
      if (!(spec.uptime.mean > 0.0)) rd.fail(f["mean_uptime_min"], "failure.mean_uptime_min must be > 0");
      spec.repair = rd.triangle(f["repair_min"], "failure.repair_min");
      mc.failure = spec;
    }
  }
  if (const auto c = m["costs_gbp"]) {
    rd.allow_keys(c, {"automated", "skilled", "unskilled"}, "costs_gbp");
    if (c["automated"]) mc.costs.automated = rd.rates(c["automated"], "costs_gbp.automated");
    if (c["skilled"]) mc.costs.skilled = rd.rates(c["skilled"], "costs_gbp.skilled");
    if (c["unskilled"]) mc.costs.unskilled = rd.rates(c["unskilled"], "costs_gbp.unskilled");
  }
  if (m["shared_stream"]) mc.shared_stream = rd.boolean(m["shared_stream"], "shared_stream");
}

void read_experiment(const Reader& rd, const YAML::Node& e, ExperimentConfig& out) {
  rd.allow_keys(e, {"variant", "mode", "root_seed", "sequential", "alpha"}, "experiment");
  if (e["variant"]) {
    const auto v = model::variant_from_string(rd.text(e["variant"], "variant"));
    if (!v) rd.fail(e["variant"], "variant must be base, buffered or buffered-crn");
    out.variant = *v;
  }
  if (const auto s = e["sequential"]) {
    rd.allow_keys(s, {"target_half_width", "confidence", "replication_cap", "min_replications"},
                  "sequential");
    auto& sq = out.sequential;
    if (s["target_half_width"]) sq.target_half_width = rd.real(s["target_half_width"], "target_half_width");
    if (s["confidence"]) sq.confidence = rd.real(s["confidence"], "confidence");
    if (s["replication_cap"]) sq.replication_cap = rd.unsigned_integer(s["replication_cap"], "replication_cap");
    if (s["min_replications"]) sq.min_replications = rd.unsigned_integer(s["min_replications"], "min_replications");
    try {
      sq.validate();
    } catch (const std::invalid_argument& ex) {
      rd.fail(s, ex.what());
    }
  }
  if (e["mode"]) {
    try {
      out.mode = parse_mode(rd.text(e["mode"], "mode"), out.sequential);
    } catch (const ConfigError& ex) {
      rd.fail(e["mode"], ex.what());
    }
  } else if (std::holds_alternative<stats::SequentialConfig>(out.mode)) {
    out.mode = out.sequential;
  }
  if (e["root_seed"]) out.root_seed = rd.unsigned_integer(e["root_seed"], "root_seed");
  if (e["alpha"]) {
    out.alpha = rd.real(e["alpha"], "alpha");
    if (!(out.alpha > 0.0 && out.alpha < 1.0)) rd.fail(e["alpha"], "alpha must lie in (0, 1)");
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& yaml_text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.mark.line + 1, e.msg));
  }
  ExperimentConfig out = default_experiment_config();
  if (root.IsNull()) return out;
  const Reader rd(origin);
  rd.allow_keys(root, {"model", "experiment"}, "top level");
  if (root["model"]) read_model(rd, root["model"], out);
  if (root["experiment"]) read_experiment(rd, root["experiment"], out);
  if (auto* seq = std::get_if<stats::SequentialConfig>(&out.mode)) *seq = out.sequential;

  // Cross-field rules the model enforces at build time, reported early.
  try {
    model::validate(out.resolve(model::Variant::base), model::Variant::base);
  } catch (const ConfigError& e) {
    rd.fail(root["model"] ? root["model"] : root, e.what());
  }
  return out;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open configuration file", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str(), path);
}

namespace {

void emit_triangle(YAML::Emitter& out, const rng::Triangular& t) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "min" << YAML::Value << t.min
      << YAML::Key << "mode" << YAML::Value << t.mode << YAML::Key << "max" << YAML::Value << t.max
      << YAML::EndMap;
}

void emit_rates(YAML::Emitter& out, const sim::CostRates& r) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "busy_per_hour" << YAML::Value
      << r.busy_per_hour << YAML::Key << "idle_per_hour" << YAML::Value << r.idle_per_hour
      << YAML::Key << "per_use" << YAML::Value << r.per_use << YAML::EndMap;
}

}  // namespace

std::string emit_experiment_config(const ExperimentConfig& c) {
  const auto& m = c.model;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "replication_length_min" << YAML::Value << m.replication_length;
  out << YAML::Key << "picking_points" << YAML::Value << m.picking_points;
  out << YAML::Key << "staffing" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "automated" << YAML::Value << m.staffing.automated
      << YAML::Key << "skilled" << YAML::Value << m.staffing.skilled
      << YAML::Key << "unskilled" << YAML::Value << m.staffing.unskilled << YAML::EndMap;
  out << YAML::Key << "unskilled_time_factor" << YAML::Value << m.unskilled_time_factor;
  out << YAML::Key << "shifts" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "day_length_min" << YAML::Value << m.shifts.day_length();
  out << YAML::Key << "windows_min" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& w : m.shifts.windows()) {
    out << YAML::Flow << YAML::BeginSeq << w.start << w.duration << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::Key << "arrivals" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mean_interarrival_min" << YAML::Value << m.arrival.mean;
  out << YAML::Key << "max_orders" << YAML::Value;
  if (m.max_orders) out << *m.max_orders; else out << YAML::Null;
  out << YAML::EndMap;
  out << YAML::Key << "order_mix" << YAML::Value << YAML::Flow << YAML::BeginMap;
  for (std::size_t i = 0; i < model::kOrderTypeCount; ++i) {
    out << YAML::Key << std::string(to_string(static_cast<model::OrderType>(i))) << YAML::Value
        << m.order_mix.weights()[i];
  }
  out << YAML::EndMap;
  out << YAML::Key << "manual_pick_min" << YAML::Value;
  emit_triangle(out, m.manual_pick);
  out << YAML::Key << "auto_dispense_min" << YAML::Value;
  emit_triangle(out, m.auto_dispense);
  out << YAML::Key << "buffer_delay_min" << YAML::Value;
  if (c.buffer_delay) emit_triangle(out, *c.buffer_delay); else out << YAML::Null;
  out << YAML::Key << "failure" << YAML::Value;
  if (m.failure) {
    out << YAML::BeginMap << YAML::Key << "mean_uptime_min" << YAML::Value << m.failure->uptime.mean
        << YAML::Key << "repair_min" << YAML::Value;
    emit_triangle(out, m.failure->repair);
    out << YAML::EndMap;
  } else {
    out << YAML::Null;
  }
  out << YAML::Key << "costs_gbp" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "automated" << YAML::Value;
  emit_rates(out, m.costs.automated);
  out << YAML::Key << "skilled" << YAML::Value;
  emit_rates(out, m.costs.skilled);
  out << YAML::Key << "unskilled" << YAML::Value;
  emit_rates(out, m.costs.unskilled);
  out << YAML::EndMap;
  out << YAML::Key << "shared_stream" << YAML::Value << m.shared_stream;
  out << YAML::EndMap;

  out << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "variant" << YAML::Value << std::string(to_string(c.variant));
  out << YAML::Key << "mode" << YAML::Value << format_mode(c.mode);
  out << YAML::Key << "root_seed" << YAML::Value << c.root_seed;
  out << YAML::Key << "alpha" << YAML::Value << c.alpha;
  out << YAML::Key << "sequential" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "target_half_width" << YAML::Value << c.sequential.target_half_width;
  out << YAML::Key << "confidence" << YAML::Value << c.sequential.confidence;
  out << YAML::Key << "replication_cap" << YAML::Value << c.sequential.replication_cap;
  out << YAML::Key << "min_replications" << YAML::Value << c.sequential.min_replications;
  out << YAML::EndMap << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace crossdock::exp
