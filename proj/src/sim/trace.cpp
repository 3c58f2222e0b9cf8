#include "crossdock/sim/trace.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

namespace crossdock::sim {

void TraceLog::emit(Minutes time, std::string_view kind, std::string subject, std::string text) {
  if (!enabled_) return;
  events_.push_back(TraceEvent{time, std::string(kind), std::move(subject), std::move(text)});
}

std::size_t TraceLog::count(std::string_view kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [&](const TraceEvent& e) { return e.kind == kind; }));
}

void TraceLog::write(std::ostream& out) const {
  for (const auto& e : events_) out << format_trace_line(e) << '\n';
}

std::string format_trace_line(const TraceEvent& event) {
  return fmt::format("{:.6f}\t{}\t{}\t{}", event.time, event.kind, event.subject, event.text);
}

}  // namespace crossdock::sim
