#pragma once

#include <vector>

#include "crossdock/sim/event_queue.hpp"

namespace crossdock::sim {

struct ShiftWindow {
  Minutes start = 0.0;     // minute of day
  Minutes duration = 0.0;
};

/// Repeating daily pattern of on-shift windows. Windows are half-open
/// [start, start + duration), must lie inside one day, and must be ordered
/// and non-overlapping (touching windows are allowed and merge).
class ShiftSchedule {
 public:
  ShiftSchedule();  // two back-to-back 8 hour shifts starting at minute 0
  ShiftSchedule(std::vector<ShiftWindow> windows, Minutes day_length = 1440.0);

  static ShiftSchedule always_on(Minutes day_length = 1440.0);

  [[nodiscard]] const std::vector<ShiftWindow>& windows() const noexcept { return windows_; }
  [[nodiscard]] Minutes day_length() const noexcept { return day_length_; }
  [[nodiscard]] Minutes on_shift_per_day() const noexcept;

  [[nodiscard]] bool on_shift(Minutes t) const noexcept;

  /// Measure of on-shift time inside [from, to).
  [[nodiscard]] Minutes on_shift_between(Minutes from, Minutes to) const noexcept;

  /// Earliest instant strictly after `t` at which the on/off status flips,
  /// or kForever for an always-on pattern.
  [[nodiscard]] Minutes next_change_after(Minutes t) const noexcept;

  /// Earliest t' >= from such that on_shift_between(from, t') == work.
  [[nodiscard]] Minutes advance_on_shift(Minutes from, Minutes work) const;

 private:
  std::vector<ShiftWindow> windows_;
  std::vector<ShiftWindow> merged_;
  std::vector<Minutes> flips_;  // minute-of-day instants where on/off status changes
  Minutes day_length_;
};

}  // namespace crossdock::sim
