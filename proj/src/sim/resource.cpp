#include "crossdock/sim/resource.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace crossdock::sim {

Resource::Resource(std::uint32_t id, std::string name, int capacity, CostRates rates,
                   bool on_shift_at_start)
    : id_(id), name_(std::move(name)), capacity_(capacity), rates_(rates),
      on_shift_(on_shift_at_start) {
  if (capacity_ <= 0) {
    throw std::invalid_argument(
        fmt::format("resource {}: capacity must be a positive integer (got {})", name_, capacity_));
  }
  holders_.reserve(static_cast<std::size_t>(capacity_));
}

bool Resource::holds(std::uint32_t entity) const noexcept {
  return std::find(holders_.begin(), holders_.end(), entity) != holders_.end();
}

bool Resource::can_serve() const noexcept {
  return on_shift_ && !down_ && !failure_pending_ && in_service() < capacity_;
}

void Resource::allocate(std::uint32_t entity, Minutes now) {
  if (!can_serve()) {
    throw SimulationError(fmt::format("resource {}: no unit available for entity {} at t={}",
                                      name_, entity, now));
  }
  if (holds(entity)) {
    throw SimulationError(
        fmt::format("resource {}: entity {} already holds a unit", name_, entity));
  }
  accrue(now);
  holders_.push_back(entity);
  ++uses_;
}

void Resource::free(std::uint32_t entity, Minutes now) {
  const auto it = std::find(holders_.begin(), holders_.end(), entity);
  if (it == holders_.end()) {
    throw SimulationError(fmt::format("resource {}: release by entity {} which holds no unit (t={})",
                                      name_, entity, now));
  }
  accrue(now);
  holders_.erase(it);
}

void Resource::set_on_shift(bool on, Minutes now) {
  accrue(now);
  on_shift_ = on;
}

void Resource::set_down(bool down, Minutes now) {
  accrue(now);
  down_ = down;
  if (down) failure_pending_ = false;
}

void Resource::accrue(Minutes now) {
  const Minutes dt = now - last_update_;
  if (dt <= 0.0) return;
  const auto busy_units = static_cast<Minutes>(holders_.size());
  busy_ += dt * busy_units;
  if (on_shift_) {
    idle_ += dt * static_cast<Minutes>(capacity_ - in_service());
  } else {
    overtime_ += dt * busy_units;
  }
  last_update_ = now;
}

double Resource::utilization() const noexcept {
  const Minutes scheduled = scheduled_minutes();
  return scheduled > 0.0 ? busy_ / scheduled : 0.0;
}

}  // namespace crossdock::sim
