#include "crossdock/sim/event_queue.hpp"

#include <cmath>

#include <fmt/format.h>

namespace crossdock::sim {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::arrival: return "arrival";
    case EventKind::start_service: return "start-service";
    case EventKind::end_service: return "end-service";
    case EventKind::shift_change: return "shift-change";
    case EventKind::failure: return "failure";
    case EventKind::repair: return "repair";
    case EventKind::end_replication: return "end-replication";
  }
  return "unknown";
}

EventQueue::EventQueue(Minutes horizon) : horizon_(horizon) {}

std::uint64_t EventQueue::schedule(Minutes time, EventKind kind, std::uint32_t subject,
                                   std::uint32_t detail) {
  if (std::isnan(time) || time < clock_) {
    throw SimulationError(fmt::format("cannot schedule {} for subject {} at t={} (clock is {})",
                                      to_string(kind), subject, time, clock_));
  }
  const std::uint64_t seq = next_sequence_++;
  heap_.push(EventRecord{time, seq, kind, subject, detail});
  return seq;
}

std::optional<EventRecord> EventQueue::next_event() {
  if (heap_.empty() || heap_.top().time > horizon_) return std::nullopt;
  EventRecord ev = heap_.top();
  heap_.pop();
  clock_ = ev.time;
  ++dispatched_;
  return ev;
}

}  // namespace crossdock::sim
