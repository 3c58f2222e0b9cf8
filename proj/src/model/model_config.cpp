#include "crossdock/model/model_config.hpp"

#include <cmath>

#include <fmt/format.h>

namespace crossdock::model {

std::string_view to_string(OrderType type) noexcept {
  switch (type) {
    case OrderType::MIFQ: return "MIFQ";
    case OrderType::MIMQ: return "MIMQ";
    case OrderType::FIFQ: return "FIFQ";
    case OrderType::FIMQ: return "FIMQ";
    case OrderType::RIRQ: return "RIRQ";
  }
  return "?";
}

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::base: return "base";
    case Variant::buffered: return "buffered";
    case Variant::buffered_crn: return "buffered-crn";
  }
  return "?";
}

std::optional<Variant> variant_from_string(std::string_view text) noexcept {
  for (auto v : {Variant::base, Variant::buffered, Variant::buffered_crn}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

std::string_view to_string(ResourceClass cls) noexcept {
  switch (cls) {
    case ResourceClass::automated: return "automated";
    case ResourceClass::skilled: return "skilled";
    case ResourceClass::unskilled: return "unskilled";
  }
  return "?";
}

int Staffing::of(ResourceClass cls) const noexcept {
  switch (cls) {
    case ResourceClass::automated: return automated;
    case ResourceClass::skilled: return skilled;
    case ResourceClass::unskilled: return unskilled;
  }
  return 0;
}

const sim::CostRates& ClassCosts::of(ResourceClass cls) const noexcept {
  switch (cls) {
    case ResourceClass::skilled: return skilled;
    case ResourceClass::unskilled: return unskilled;
    case ResourceClass::automated: break;
  }
  return automated;
}

namespace {

template <class Dist>
void check(const Dist& d, const std::string& what) {
  try {
    rng::validate(d, what);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void check_duration(const rng::Triangular& d, const std::string& what) {
  check(d, what);
  if (d.min < 0.0) throw ConfigError(fmt::format("{}: durations cannot be negative (min {})", what, d.min));
}

void check_rates(const sim::CostRates& r, std::string_view cls) {
  for (const double x : {r.busy_per_hour, r.idle_per_hour, r.per_use}) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ConfigError(fmt::format("costs.{}: rates must be finite and non-negative", cls));
    }
  }
}

}  // namespace

void validate(const ModelConfig& c, Variant variant) {
  check(c.arrival, "arrival");
  if (c.order_mix.size() != kOrderTypeCount) {
    throw ConfigError(fmt::format("order_mix: expected {} weights (MIFQ, MIMQ, FIFQ, FIMQ, RIRQ), got {}",
                                  kOrderTypeCount, c.order_mix.size()));
  }
  check(c.order_mix, "order_mix");
  check_duration(c.manual_pick, "manual_pick");
  check_duration(c.auto_dispense, "auto_dispense");

  if (variant == Variant::base && c.buffer_delay) {
    throw ConfigError("buffer_delay: the base variant has no buffer station; remove buffer_delay");
  }
  if (variant != Variant::base && !c.buffer_delay) {
    throw ConfigError(fmt::format("buffer_delay: required by the {} variant", to_string(variant)));
  }
  if (c.buffer_delay) check_duration(*c.buffer_delay, "buffer_delay");

  if (c.failure) {
    check(c.failure->uptime, "failure.uptime");
    check_duration(c.failure->repair, "failure.repair");
  }
  if (c.picking_points < 1) {
    throw ConfigError(fmt::format("picking_points must be >= 1 (got {})", c.picking_points));
  }
  for (auto cls : {ResourceClass::automated, ResourceClass::skilled, ResourceClass::unskilled}) {
    if (c.staffing.of(cls) < 1) {
      throw ConfigError(fmt::format("staffing.{}: capacity must be a positive integer (got {})",
                                    to_string(cls), c.staffing.of(cls)));
    }
    check_rates(c.costs.of(cls), to_string(cls));
  }
  if (!(c.unskilled_time_factor > 0.0) || !std::isfinite(c.unskilled_time_factor)) {
    throw ConfigError("unskilled_time_factor must be a positive number");
  }
  if (!(c.replication_length > 0.0) || !std::isfinite(c.replication_length)) {
    throw ConfigError("replication_length must be a positive number of minutes");
  }
}

}  // namespace crossdock::model
