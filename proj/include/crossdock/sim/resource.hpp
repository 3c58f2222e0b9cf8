#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "crossdock/sim/event_queue.hpp"
#include "crossdock/sim/shift_schedule.hpp"

namespace crossdock::sim {

/// Money per hour busy, money per hour idle, money per granted seize.
struct CostRates {
  double busy_per_hour = 0.0;
  double idle_per_hour = 0.0;
  double per_use = 0.0;

  friend bool operator==(const CostRates&, const CostRates&) = default;
};

/// Capacity-constrained server with a shift pattern.
///
/// Time accounting is unit-minutes. While on shift every unit is either busy
/// or idle. A unit still serving when its shift ends finishes the job and
/// the overlap counts as busy (overtime), so scheduled minutes are the
/// on-shift capacity minutes plus overtime. A unit that is down for repair
/// on shift counts as idle.
class Resource {
 public:
  Resource(std::uint32_t id, std::string name, int capacity, CostRates rates,
           bool on_shift_at_start = true);

  [[nodiscard]] std::uint32_t id() const noexcept { return id_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int capacity() const noexcept { return capacity_; }
  [[nodiscard]] const CostRates& rates() const noexcept { return rates_; }

  [[nodiscard]] bool on_shift() const noexcept { return on_shift_; }
  [[nodiscard]] bool down() const noexcept { return down_; }
  [[nodiscard]] bool failure_pending() const noexcept { return failure_pending_; }
  [[nodiscard]] int in_service() const noexcept { return static_cast<int>(holders_.size()); }
  [[nodiscard]] bool holds(std::uint32_t entity) const noexcept;

  /// True when a new seize could start right now.
  [[nodiscard]] bool can_serve() const noexcept;

  /// Allocates a unit to `entity`. Throws SimulationError if no unit is
  /// available or the entity already holds this resource.
  void allocate(std::uint32_t entity, Minutes now);

  /// Frees the unit held by `entity`. Throws SimulationError if not held.
  void free(std::uint32_t entity, Minutes now);

  void set_on_shift(bool on, Minutes now);
  void set_down(bool down, Minutes now);
  void set_failure_pending(bool pending) noexcept { failure_pending_ = pending; }

  /// FIFO of entities waiting specifically for this resource.
  std::deque<std::uint32_t>& queue() noexcept { return queue_; }
  [[nodiscard]] const std::deque<std::uint32_t>& queue() const noexcept { return queue_; }

  /// Brings the time integrals up to `now`.
  void accrue(Minutes now);

  [[nodiscard]] Minutes busy_minutes() const noexcept { return busy_; }
  [[nodiscard]] Minutes idle_minutes() const noexcept { return idle_; }
  [[nodiscard]] Minutes overtime_minutes() const noexcept { return overtime_; }
  [[nodiscard]] Minutes scheduled_minutes() const noexcept { return busy_ + idle_; }
  [[nodiscard]] std::uint64_t use_count() const noexcept { return uses_; }
  [[nodiscard]] double utilization() const noexcept;

 private:
  std::uint32_t id_;
  std::string name_;
  int capacity_;
  CostRates rates_;
  bool on_shift_;
  bool down_ = false;
  bool failure_pending_ = false;
  std::vector<std::uint32_t> holders_;
  std::deque<std::uint32_t> queue_;
  Minutes last_update_ = 0.0;
  Minutes busy_ = 0.0;
  Minutes idle_ = 0.0;
  Minutes overtime_ = 0.0;
  std::uint64_t uses_ = 0;
};

/// Requests a unit of `resource` for `entity`. Starts service and schedules
/// its end_service event (subject = entity, detail = resource id) when a unit
/// is free; otherwise appends the entity to the resource's FIFO queue.
/// Returns true when service started.
template <class DurationSource>
bool seize(EventQueue& events, Resource& resource, std::uint32_t entity,
           DurationSource&& duration) {
  if (resource.holds(entity)) {
    throw SimulationError("seize: entity " + std::to_string(entity) +
                          " already holds " + resource.name());
  }
  if (!resource.can_serve()) {
    resource.queue().push_back(entity);
    return false;
  }
  resource.allocate(entity, events.now());
  events.schedule(events.now() + duration(), EventKind::end_service, entity, resource.id());
  return true;
}

/// Frees the unit held by `entity` and, if the resource can serve, starts
/// the head of its queue at the current clock. Returns the entity that
/// started, if any.
template <class DurationSource>
std::optional<std::uint32_t> release(EventQueue& events, Resource& resource,
                                     std::uint32_t entity, DurationSource&& duration) {
  resource.free(entity, events.now());
  if (resource.queue().empty() || !resource.can_serve()) return std::nullopt;
  const std::uint32_t next = resource.queue().front();
  resource.queue().pop_front();
  resource.allocate(next, events.now());
  events.schedule(events.now() + duration(), EventKind::end_service, next, resource.id());
  return next;
}

/// Starts queued entities after the resource became able to serve again
/// (shift start, repair). Returns the entities started, in order.
template <class DurationSource>
std::vector<std::uint32_t> drain_queue(EventQueue& events, Resource& resource,
                                       DurationSource&& duration) {
  std::vector<std::uint32_t> started;
  while (!resource.queue().empty() && resource.can_serve()) {
    const std::uint32_t next = resource.queue().front();
    resource.queue().pop_front();
    resource.allocate(next, events.now());
    events.schedule(events.now() + duration(), EventKind::end_service, next, resource.id());
    started.push_back(next);
  }
  return started;
}

}  // namespace crossdock::sim
