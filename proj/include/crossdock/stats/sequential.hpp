#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace crossdock::stats {

/// Stopping parameters for sequential sampling: keep adding replications
/// until the confidence-interval half-width on the output measure falls to
/// the target, or the replication cap is hit.
struct SequentialConfig {
  double target_half_width = 0.5;
  double confidence = 0.95;
  std::uint64_t replication_cap = 999'999;
  std::uint64_t min_replications = 3;

  /// Throws std::invalid_argument unless target > 0, 0 < confidence < 1 and
  /// cap >= min_replications >= 2.
  void validate() const;
};

enum class StopReason : std::uint8_t { running, target_met, cap_reached, fixed_complete };

std::string_view to_string(StopReason reason) noexcept;
std::optional<StopReason> stop_reason_from_string(std::string_view text) noexcept;

/// Completed-replication count plus the running sample. Mean and variance
/// are tracked with Welford's update so each check is O(1).
class SequentialState {
 public:
  void add(double value);

  [[nodiscard]] std::uint64_t completed() const noexcept { return sample_.size(); }
  [[nodiscard]] std::span<const double> sample() const noexcept { return sample_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] std::optional<double> sd() const noexcept;
  [[nodiscard]] std::optional<double> half_width(double confidence) const;

 private:
  std::vector<double> sample_;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// True while another replication should run: fewer than min_replications
/// done, or the half-width still exceeds the target and the cap is not hit.
bool sequential_should_continue(const SequentialState& state, const SequentialConfig& config);

/// Why the controller would stop now; `running` if it would continue.
StopReason sequential_stop_reason(const SequentialState& state, const SequentialConfig& config);

/// Planning estimate ceil((z_{1-alpha/2} * sd / target)^2), at least 1.
std::uint64_t expected_replications(double sd_estimate, double target, double confidence = 0.95);

struct SequentialOutcome {
  SequentialState state;
  StopReason reason = StopReason::running;
  std::optional<double> half_width;
};

/// Drives `next_value(replication_index)` one replication at a time until
/// the rule says stop.
template <class Generator>
SequentialOutcome run_sequential(const SequentialConfig& config, Generator&& next_value) {
  config.validate();
  SequentialOutcome out;
  while (sequential_should_continue(out.state, config)) {
    out.state.add(next_value(out.state.completed()));
  }
  out.reason = sequential_stop_reason(out.state, config);
  out.half_width = out.state.half_width(config.confidence);
  return out;
}

}  // namespace crossdock::stats
