#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crossdock::sim {

/// Simulated time, in minutes.
using Minutes = double;

inline constexpr Minutes kForever = std::numeric_limits<Minutes>::infinity();

enum class EventKind : std::uint8_t {
  arrival,
  start_service,
  end_service,
  shift_change,
  failure,
  repair,
  end_replication,
};

std::string_view to_string(EventKind kind) noexcept;

struct EventRecord {
  Minutes time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::arrival;
  std::uint32_t subject = 0;
  // Free-form payload interpreted by the model (station or resource index).
  std::uint32_t detail = 0;
};

/// Raised when the kernel detects a broken invariant (scheduling into the
/// past, releasing a unit that is not held). Fatal for the replication.
class SimulationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Future-event list ordered by (time, insertion sequence).
class EventQueue {
 public:
  explicit EventQueue(Minutes horizon = kForever);

  /// Enqueues an event and returns its sequence number.
  /// Throws SimulationError if `time` lies before the current clock.
  std::uint64_t schedule(Minutes time, EventKind kind, std::uint32_t subject,
                         std::uint32_t detail = 0);

  /// Pops the earliest event and advances the clock to it. Returns nullopt
  /// when the list is empty or the earliest event lies past the horizon; in
  /// that case the event stays undispatched and the clock does not move.
  std::optional<EventRecord> next_event();

  [[nodiscard]] Minutes now() const noexcept { return clock_; }
  [[nodiscard]] Minutes horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t pending() const noexcept { return heap_.size(); }
  [[nodiscard]] std::uint64_t dispatched() const noexcept { return dispatched_; }

 private:
  struct Later {
    bool operator()(const EventRecord& a, const EventRecord& b) const noexcept {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  std::priority_queue<EventRecord, std::vector<EventRecord>, Later> heap_;
  Minutes clock_ = 0.0;
  Minutes horizon_;
  std::uint64_t next_sequence_ = 0;
  std::uint64_t dispatched_ = 0;
};

}  // namespace crossdock::sim
