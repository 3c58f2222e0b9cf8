#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crossdock/model/model_config.hpp"
#include "crossdock/rng/streams.hpp"
#include "crossdock/sim/trace.hpp"

namespace crossdock::model {

struct Order {
  std::uint32_t id = 0;
  OrderType type = OrderType::MIFQ;
  std::uint32_t picking_point = 0;
  Minutes created_at = 0.0;
  Minutes queued_at = 0.0;
  std::optional<Minutes> disposed_at;
};

struct ResourceUsage {
  std::string name;
  ResourceClass resource_class = ResourceClass::automated;
  int capacity = 1;
  sim::CostRates rates;
  Minutes busy = 0.0;
  Minutes idle = 0.0;
  Minutes overtime = 0.0;
  std::uint64_t uses = 0;

  [[nodiscard]] Minutes scheduled() const noexcept { return busy + idle; }

  friend bool operator==(const ResourceUsage&, const ResourceUsage&) = default;
};

using UsageLedger = std::vector<ResourceUsage>;

/// Sum over resources of busy_rate * busy hours + idle_rate * idle hours +
/// per_use * uses.
double total_usage_cost(const UsageLedger& ledger) noexcept;

struct ReplicationResult {
  std::uint64_t replication = 0;
  double total_usage_cost = 0.0;
  std::uint64_t created = 0;
  std::uint64_t disposed = 0;
  std::uint64_t in_system = 0;
  std::uint64_t started_service = 0;
  double mean_wait = 0.0;     // queue wait at the picking point, over started orders
  double mean_sojourn = 0.0;  // creation to disposal, over disposed orders
  std::uint64_t failures = 0;
  UsageLedger ledger;

  friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

/// Optional per-order observer, called at disposal. Used by tests that need
/// individual sojourn times.
struct OrderLog {
  std::vector<Order> disposed;
};

/// Immutable, validated crossdock order-picking model.
///
/// Event graph per order: arrival -> order-type draw and point assignment ->
/// [buffer station] -> picking-point FIFO -> seize the first free unit in
/// priority order (automated, skilled, unskilled) -> service -> release ->
/// zero-time consolidation and dispose.
class CrossdockModel {
 public:
  /// Validates and freezes the configuration. Throws ConfigError.
  static CrossdockModel build(Variant variant, ModelConfig config);

  [[nodiscard]] Variant variant() const noexcept { return variant_; }
  [[nodiscard]] const ModelConfig& config() const noexcept { return config_; }
  [[nodiscard]] bool has_buffer() const noexcept { return variant_ != Variant::base; }

  /// Which substream feeds each randomness source.
  [[nodiscard]] std::vector<std::pair<rng::Source, rng::Source>> stream_map() const;
  [[nodiscard]] bool dedicated_streams() const noexcept;

  /// Runs replication `index` to the configured length. Deterministic in
  /// (config, variant, root_seed, index).
  [[nodiscard]] ReplicationResult run_replication(std::uint64_t root_seed, std::uint64_t index,
                                                  sim::TraceLog* trace = nullptr,
                                                  OrderLog* orders = nullptr) const;

 private:
  CrossdockModel(Variant variant, ModelConfig config)
      : variant_(variant), config_(std::move(config)) {}

  Variant variant_;
  ModelConfig config_;
};

}  // namespace crossdock::model
