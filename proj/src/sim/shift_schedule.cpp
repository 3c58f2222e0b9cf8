#include "crossdock/sim/shift_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace crossdock::sim {

namespace {

std::vector<ShiftWindow> default_windows() { return {{0.0, 480.0}, {480.0, 480.0}}; }

}  // namespace

ShiftSchedule::ShiftSchedule() : ShiftSchedule(default_windows(), 1440.0) {}

ShiftSchedule::ShiftSchedule(std::vector<ShiftWindow> windows, Minutes day_length)
    : windows_(std::move(windows)), day_length_(day_length) {
  if (!(day_length_ > 0.0) || !std::isfinite(day_length_)) {
    throw std::invalid_argument("shift schedule: day length must be positive and finite");
  }
  if (windows_.empty()) {
    throw std::invalid_argument("shift schedule: at least one on-shift window is required");
  }
  Minutes prev_end = 0.0;
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    const auto& w = windows_[i];
    if (w.start < 0.0 || !(w.duration > 0.0) || w.start + w.duration > day_length_) {
      throw std::invalid_argument(fmt::format(
          "shift schedule: window {} [{}, +{}) must have positive length and lie inside the {}-minute day",
          i, w.start, w.duration, day_length_));
    }
    if (i > 0 && w.start < prev_end) {
      throw std::invalid_argument(
          fmt::format("shift schedule: window {} overlaps or precedes the previous window", i));
    }
    if (!merged_.empty() && w.start == prev_end) {
      merged_.back().duration += w.duration;
    } else {
      merged_.push_back(w);
    }
    prev_end = w.start + w.duration;
  }
  // A window touching midnight continues into the next day's first window.
  const bool wraps = merged_.front().start == 0.0 &&
                     merged_.back().start + merged_.back().duration == day_length_;
  for (std::size_t i = 0; i < merged_.size(); ++i) {
    const auto& w = merged_[i];
    if (!(wraps && i == 0)) flips_.push_back(w.start);
    if (!(wraps && i + 1 == merged_.size())) flips_.push_back(w.start + w.duration);
  }
}

ShiftSchedule ShiftSchedule::always_on(Minutes day_length) {
  return ShiftSchedule({{0.0, day_length}}, day_length);
}

Minutes ShiftSchedule::on_shift_per_day() const noexcept {
  Minutes total = 0.0;
  for (const auto& w : merged_) total += w.duration;
  return total;
}

bool ShiftSchedule::on_shift(Minutes t) const noexcept {
  const Minutes day = std::floor(t / day_length_);
  const Minutes tod = t - day * day_length_;
  for (const auto& w : merged_) {
    if (tod >= w.start && tod < w.start + w.duration) return true;
  }
  return false;
}

Minutes ShiftSchedule::on_shift_between(Minutes from, Minutes to) const noexcept {
  if (!(to > from)) return 0.0;
  const auto first_day = static_cast<long long>(std::floor(from / day_length_));
  const auto last_day = static_cast<long long>(std::floor(to / day_length_));
  Minutes total = 0.0;
  // Whole days in the middle contribute a full pattern each.
  if (last_day - first_day >= 2) {
    total += static_cast<Minutes>(last_day - first_day - 1) * on_shift_per_day();
  }
  auto clip_day = [&](long long day) {
    const Minutes base = static_cast<Minutes>(day) * day_length_;
    for (const auto& w : merged_) {
      const Minutes lo = std::max(from, base + w.start);
      const Minutes hi = std::min(to, base + w.start + w.duration);
      if (hi > lo) total += hi - lo;
    }
  };
  clip_day(first_day);
  if (last_day != first_day) clip_day(last_day);
  return total;
}

Minutes ShiftSchedule::next_change_after(Minutes t) const noexcept {
  if (flips_.empty()) return kForever;
  const Minutes day = std::floor(t / day_length_);
  for (int offset = 0; offset < 2; ++offset) {
    const Minutes base = (day + offset) * day_length_;
    for (const Minutes f : flips_) {
      if (base + f > t) return base + f;
    }
  }
  return kForever;
}

Minutes ShiftSchedule::advance_on_shift(Minutes from, Minutes work) const {
  if (work < 0.0 || std::isnan(work)) {
    throw std::invalid_argument("advance_on_shift: work must be non-negative");
  }
  if (std::isinf(work)) return kForever;
  if (work == 0.0) return from;
  const Minutes per_day = on_shift_per_day();
  Minutes t = from;
  Minutes remaining = work;
  // Skip whole days first so long up-times stay O(windows).
  if (remaining > per_day) {
    const Minutes days = std::floor(remaining / per_day) - 1.0;
    if (days > 0.0) {
      t += days * day_length_;
      remaining -= days * per_day;
    }
  }
  while (true) {
    const auto day = std::floor(t / day_length_);
    const Minutes base = day * day_length_;
    for (const auto& w : merged_) {
      const Minutes open = base + w.start;
      const Minutes close = open + w.duration;
      if (close <= t) continue;
      const Minutes lo = std::max(t, open);
      const Minutes avail = close - lo;
      if (remaining <= avail) return lo + remaining;
      remaining -= avail;
      t = close;
    }
    t = base + day_length_;
  }
}

}  // namespace crossdock::sim
