#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crossdock/sim/event_queue.hpp"

namespace crossdock::sim {

struct TraceEvent {
  Minutes time = 0.0;
  std::string kind;
  std::string subject;
  std::string text;
};

/// Collects trace lines in dispatch order. A disabled log drops everything,
/// so models can call emit() unconditionally.
class TraceLog {
 public:
  explicit TraceLog(bool enabled = true) : enabled_(enabled) {}

  [[nodiscard]] bool enabled() const noexcept { return enabled_; }

  void emit(Minutes time, std::string_view kind, std::string subject, std::string text);

  [[nodiscard]] const std::vector<TraceEvent>& events() const noexcept { return events_; }
  [[nodiscard]] std::size_t count(std::string_view kind) const noexcept;

  /// One line per event: `<time>\t<kind>\t<subject>\t<text>`.
  void write(std::ostream& out) const;

 private:
  bool enabled_;
  std::vector<TraceEvent> events_;
};

std::string format_trace_line(const TraceEvent& event);

}  // namespace crossdock::sim
