#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "crossdock/rng/distributions.hpp"
#include "crossdock/sim/resource.hpp"
#include "crossdock/sim/shift_schedule.hpp"

namespace crossdock::model {

using sim::Minutes;

enum class OrderType : std::uint8_t { MIFQ, MIMQ, FIFQ, FIMQ, RIRQ };
inline constexpr std::size_t kOrderTypeCount = 5;
std::string_view to_string(OrderType type) noexcept;

/// The order-type mix observed at the distribution centre, in OrderType order.
inline constexpr std::array<double, kOrderTypeCount> kObservedOrderMix = {0.20, 0.25, 0.10, 0.15,
                                                                       0.30};

/// base: arrivals, mix and picking only.
/// buffered: adds a timed buffer station ahead of picking.
/// buffered_crn: buffered with one dedicated stream per randomness source.
enum class Variant : std::uint8_t { base, buffered, buffered_crn };
std::string_view to_string(Variant variant) noexcept;
std::optional<Variant> variant_from_string(std::string_view text) noexcept;

/// Resource classes at a picking point, in dispatch priority order.
enum class ResourceClass : std::uint8_t { automated, skilled, unskilled };
inline constexpr std::size_t kResourceClassCount = 3;
std::string_view to_string(ResourceClass cls) noexcept;

struct Staffing {
  int automated = 1;
  int skilled = 2;
  int unskilled = 2;

  [[nodiscard]] int of(ResourceClass cls) const noexcept;
};

struct ClassCosts {
  sim::CostRates automated{20.0, 10.0, 0.0};
  sim::CostRates skilled{12.0, 6.0, 0.0};
  sim::CostRates unskilled{8.0, 4.0, 0.0};

  [[nodiscard]] const sim::CostRates& of(ResourceClass cls) const noexcept;
};

/// Up-time is measured in on-shift minutes; repair runs on the wall clock.
struct FailureSpec {
  rng::Exponential uptime{1.0e9};
  rng::Triangular repair{5.0, 10.0, 20.0};
};

struct ModelConfig {
  rng::Exponential arrival{1.0};
  std::optional<std::uint64_t> max_orders;  // stop creating after this many
  rng::Discrete order_mix{std::vector<double>(kObservedOrderMix.begin(), kObservedOrderMix.end())};
  rng::Triangular manual_pick{2.0, 3.5, 5.0};
  rng::Triangular auto_dispense{0.5, 1.0, 1.5};
  std::optional<rng::Triangular> buffer_delay;
  std::optional<FailureSpec> failure;
  int picking_points = 4;
  Staffing staffing;
  double unskilled_time_factor = 1.25;
  ClassCosts costs;
  Minutes replication_length = 28'800.0;
  sim::ShiftSchedule shifts;
  // base/buffered draw every source from one stream unless this is false;
  // buffered_crn always uses dedicated streams.
  bool shared_stream = true;
};

/// Buffer delay used by the buffered variants when none is configured.
inline constexpr rng::Triangular kDefaultBufferDelay{0.5, 1.0, 2.0};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ConfigError describing the first violated constraint. The buffer
/// delay must be present exactly when the variant is buffered.
void validate(const ModelConfig& config, Variant variant);

}  // namespace crossdock::model
