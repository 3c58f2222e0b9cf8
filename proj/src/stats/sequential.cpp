#include "crossdock/stats/sequential.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "crossdock/stats/quantiles.hpp"
#include "crossdock/stats/summary.hpp"

namespace crossdock::stats {

void SequentialConfig::validate() const {
  if (!(target_half_width > 0.0) || !std::isfinite(target_half_width)) {
    throw std::invalid_argument(
        fmt::format("sequential: target half-width must be > 0 (got {})", target_half_width));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument(
        fmt::format("sequential: confidence must lie in (0, 1) (got {})", confidence));
  }
  if (min_replications < 2) {
    throw std::invalid_argument("sequential: min_replications must be at least 2");
  }
  if (replication_cap < min_replications) {
    throw std::invalid_argument(
        fmt::format("sequential: replication cap {} is below min_replications {}",
                    replication_cap, min_replications));
  }
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::running: return "running";
    case StopReason::target_met: return "target-met";
    case StopReason::cap_reached: return "cap-reached";
    case StopReason::fixed_complete: return "fixed-complete";
  }
  return "unknown";
}

std::optional<StopReason> stop_reason_from_string(std::string_view text) noexcept {
  for (auto r : {StopReason::running, StopReason::target_met, StopReason::cap_reached,
                 StopReason::fixed_complete}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

void SequentialState::add(double value) {
  sample_.push_back(value);
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(sample_.size());
  m2_ += delta * (value - mean_);
}

std::optional<double> SequentialState::sd() const noexcept {
  if (sample_.size() < 2) return std::nullopt;
  return std::sqrt(std::max(0.0, m2_) / static_cast<double>(sample_.size() - 1));
}

std::optional<double> SequentialState::half_width(double confidence) const {
  const auto s = sd();
  if (!s) return std::nullopt;
  return stats::half_width(sample_.size(), *s, confidence);
}

StopReason sequential_stop_reason(const SequentialState& state, const SequentialConfig& config) {
  const std::uint64_t n = state.completed();
  if (n < config.min_replications) return StopReason::running;
  const auto sd = state.sd();
  if (sd) {
    const double root_n = std::sqrt(static_cast<double>(n));
    // t > z for every df, so a z-based half-width above target already
    // settles the question without inverting the t distribution.
    const double z = normal_quantile(0.5 + 0.5 * config.confidence);
    const bool clearly_over = z * *sd / root_n > config.target_half_width;
    if (!clearly_over) {
      const auto hw = state.half_width(config.confidence);
      if (hw && *hw <= config.target_half_width) return StopReason::target_met;
    }
  }
  if (n >= config.replication_cap) return StopReason::cap_reached;
  return StopReason::running;
}

bool sequential_should_continue(const SequentialState& state, const SequentialConfig& config) {
  return sequential_stop_reason(state, config) == StopReason::running;
}

std::uint64_t expected_replications(double sd_estimate, double target, double confidence) {
  if (!(sd_estimate >= 0.0) || !(target > 0.0)) {
    throw std::invalid_argument("expected_replications: need sd >= 0 and target > 0");
  }
  const double z = normal_quantile(0.5 + 0.5 * confidence);
  const double n = std::ceil(std::pow(z * sd_estimate / target, 2));
  return n < 1.0 ? 1 : static_cast<std::uint64_t>(n);
}

}  // namespace crossdock::stats
