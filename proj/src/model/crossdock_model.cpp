#include "crossdock/model/crossdock_model.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>

#include <fmt/format.h>

namespace crossdock::model {

double total_usage_cost(const UsageLedger& ledger) noexcept {
  double total = 0.0;
  for (const auto& r : ledger) {
    total += r.rates.busy_per_hour * (r.busy / 60.0) + r.rates.idle_per_hour * (r.idle / 60.0) +
             r.rates.per_use * static_cast<double>(r.uses);
  }
  return total;
}

CrossdockModel CrossdockModel::build(Variant variant, ModelConfig config) {
  validate(config, variant);
  return CrossdockModel(variant, std::move(config));
}

bool CrossdockModel::dedicated_streams() const noexcept {
  return variant_ == Variant::buffered_crn || !config_.shared_stream;
}

std::vector<std::pair<rng::Source, rng::Source>> CrossdockModel::stream_map() const {
  std::vector<std::pair<rng::Source, rng::Source>> map;
  for (const auto src : rng::kAllSources) {
    map.emplace_back(src, dedicated_streams() ? src : rng::Source::arrivals);
  }
  return map;
}

namespace {

constexpr std::uint32_t kBufferStation = std::numeric_limits<std::uint32_t>::max();

constexpr std::array<ResourceClass, kResourceClassCount> kPriority = {
    ResourceClass::automated, ResourceClass::skilled, ResourceClass::unskilled};

// One replication's mutable state. Lives on the stack of run_replication.
class Replication {
 public:
  Replication(const CrossdockModel& model, std::uint64_t root_seed, std::uint64_t index,
              sim::TraceLog* trace, OrderLog* orders)
      : model_(model), cfg_(model.config()), events_(cfg_.replication_length), trace_(trace),
        orders_log_(orders) {
    result_.replication = index;
    for (const auto src : rng::kAllSources) {
      streams_.emplace_back(root_seed, rng::StreamId{src, index});
    }
    const bool on = cfg_.shifts.on_shift(0.0);
    const auto points = static_cast<std::uint32_t>(cfg_.picking_points);
    resources_.reserve(points * kResourceClassCount);
    for (std::uint32_t p = 0; p < points; ++p) {
      for (const auto cls : kPriority) {
        const auto id = static_cast<std::uint32_t>(resources_.size());
        resources_.emplace_back(id, fmt::format("P{}.{}", p + 1, to_string(cls)),
                                cfg_.staffing.of(cls), cfg_.costs.of(cls), on);
      }
    }
    point_queues_.resize(points);
  }

  ReplicationResult run() {
    start();
    while (auto ev = events_.next_event()) {
      if (ev->kind == sim::EventKind::end_replication) break;
      dispatch(*ev);
    }
    finish();
    return std::move(result_);
  }

 private:
  rng::Stream& stream(rng::Source src) {
    const bool dedicated = model_.dedicated_streams();
    return streams_[static_cast<std::size_t>(dedicated ? src : rng::Source::arrivals)];
  }

  bool tracing() const { return trace_ != nullptr && trace_->enabled(); }

  static std::string order_name(std::uint32_t id) { return fmt::format("order-{}", id); }

  sim::Resource& resource_at(std::uint32_t point, ResourceClass cls) {
    return resources_[point * kResourceClassCount + static_cast<std::size_t>(cls)];
  }

  static ResourceClass class_of(std::uint32_t resource_id) {
    return kPriority[resource_id % kResourceClassCount];
  }

  void start() {
    if (!cfg_.arrival.disabled() && cfg_.max_orders.value_or(1) > 0) {
      schedule_arrival(0.0);
    }
    const Minutes change = cfg_.shifts.next_change_after(0.0);
    if (change != sim::kForever) events_.schedule(change, sim::EventKind::shift_change, 0);
    if (cfg_.failure) {
      for (auto& r : resources_) {
        if (class_of(r.id()) == ResourceClass::automated) schedule_failure(r, 0.0);
      }
    }
    events_.schedule(cfg_.replication_length, sim::EventKind::end_replication, 0);
  }

  void schedule_arrival(Minutes from) {
    const Minutes gap = cfg_.arrival.sample(stream(rng::Source::arrivals));
    events_.schedule(from + gap, sim::EventKind::arrival, static_cast<std::uint32_t>(orders_.size()));
  }

  void schedule_failure(const sim::Resource& r, Minutes from) {
    const Minutes up = cfg_.failure->uptime.sample(stream(rng::Source::failure));
    const Minutes at = cfg_.shifts.advance_on_shift(from, up);
    if (at != sim::kForever) events_.schedule(at, sim::EventKind::failure, r.id());
  }

  void dispatch(const sim::EventRecord& ev) {
    switch (ev.kind) {
      case sim::EventKind::arrival: on_arrival(); break;
      case sim::EventKind::end_service:
        if (ev.detail == kBufferStation) {
          on_buffer_done(ev.subject);
        } else {
          on_service_done(ev.subject, ev.detail);
        }
        break;
      case sim::EventKind::shift_change: on_shift_change(); break;
      case sim::EventKind::failure: on_failure(ev.subject); break;
      case sim::EventKind::repair: on_repair(ev.subject); break;
      case sim::EventKind::start_service:
      case sim::EventKind::end_replication: break;
    }
  }

  void on_arrival() {
    const Minutes now = events_.now();
    Order order;
    order.id = static_cast<std::uint32_t>(orders_.size());
    order.created_at = now;
    order.type = static_cast<OrderType>(cfg_.order_mix.sample(stream(rng::Source::order_type_mix)));
    const double u = stream(rng::Source::routing).uniform();
    order.picking_point = std::min(static_cast<std::uint32_t>(u * cfg_.picking_points),
                                   static_cast<std::uint32_t>(cfg_.picking_points - 1));
    orders_.push_back(order);
    ++result_.created;
    if (tracing()) {
      trace_->emit(now, "create", order_name(order.id),
                   fmt::format("type {} point P{}", to_string(order.type), order.picking_point + 1));
    }

    if (!cfg_.max_orders || orders_.size() < *cfg_.max_orders) schedule_arrival(now);

    if (model_.has_buffer()) {
      const Minutes delay = cfg_.buffer_delay->sample(stream(rng::Source::buffer));
      ++in_buffer_;
      if (tracing()) {
        trace_->emit(now, "buffer-start", order_name(order.id), fmt::format("delay {:.6f}", delay));
      }
      events_.schedule(now + delay, sim::EventKind::end_service, order.id, kBufferStation);
    } else {
      enter_point(order.id);
    }
  }

  void on_buffer_done(std::uint32_t order_id) {
    --in_buffer_;
    if (tracing()) trace_->emit(events_.now(), "buffer-end", order_name(order_id), "buffer station");
    enter_point(order_id);
  }

  void enter_point(std::uint32_t order_id) {
    Order& order = orders_[order_id];
    order.queued_at = events_.now();
    auto& queue = point_queues_[order.picking_point];
    queue.push_back(order_id);
    if (tracing()) {
      trace_->emit(events_.now(), "enqueue", order_name(order_id),
                   fmt::format("P{} queue length {}", order.picking_point + 1, queue.size()));
    }
    serve_point(order.picking_point);
  }

  // Starts queued orders on free units, highest-priority class first.
  void serve_point(std::uint32_t point) {
    auto& queue = point_queues_[point];
    while (!queue.empty()) {
      sim::Resource* free_unit = nullptr;
      for (const auto cls : kPriority) {
        auto& r = resource_at(point, cls);
        if (r.can_serve()) {
          free_unit = &r;
          break;
        }
      }
      if (free_unit == nullptr) return;
      const std::uint32_t order_id = queue.front();
      queue.pop_front();
      start_service(order_id, *free_unit);
    }
  }

  Minutes service_time(ResourceClass cls) {
    switch (cls) {
      case ResourceClass::automated:
        return cfg_.auto_dispense.sample(stream(rng::Source::auto_dispense));
      case ResourceClass::skilled: return cfg_.manual_pick.sample(stream(rng::Source::manual_pick));
      case ResourceClass::unskilled:
        return cfg_.unskilled_time_factor *
               cfg_.manual_pick.sample(stream(rng::Source::manual_pick));
    }
    return 0.0;
  }

  void start_service(std::uint32_t order_id, sim::Resource& r) {
    const Minutes now = events_.now();
    r.allocate(order_id, now);
    const Minutes duration = service_time(class_of(r.id()));
    wait_total_ += now - orders_[order_id].queued_at;
    ++result_.started_service;
    if (tracing()) {
      trace_->emit(now, "start-service", order_name(order_id),
                   fmt::format("{} duration {:.6f}", r.name(), duration));
    }
    events_.schedule(now + duration, sim::EventKind::end_service, order_id, r.id());
  }

  void on_service_done(std::uint32_t order_id, std::uint32_t resource_id) {
    const Minutes now = events_.now();
    auto& r = resources_[resource_id];
    r.free(order_id, now);
    if (tracing()) trace_->emit(now, "end-service", order_name(order_id), r.name());
    if (r.failure_pending() && r.in_service() == 0) begin_repair(r);

    Order& order = orders_[order_id];
    order.disposed_at = now;
    ++result_.disposed;
    sojourn_total_ += now - order.created_at;
    if (tracing()) {
      trace_->emit(now, "dispose", order_name(order_id),
                   fmt::format("sojourn {:.6f}", now - order.created_at));
    }
    if (orders_log_ != nullptr) orders_log_->disposed.push_back(order);
    serve_point(order.picking_point);
  }

  void on_shift_change() {
    const Minutes now = events_.now();
    const bool on = cfg_.shifts.on_shift(now);
    for (auto& r : resources_) r.set_on_shift(on, now);
    if (tracing()) trace_->emit(now, "shift-change", "shifts", on ? "on" : "off");
    const Minutes next = cfg_.shifts.next_change_after(now);
    if (next != sim::kForever) events_.schedule(next, sim::EventKind::shift_change, 0);
    if (on) {
      for (std::uint32_t p = 0; p < point_queues_.size(); ++p) serve_point(p);
    }
  }

  void on_failure(std::uint32_t resource_id) {
    auto& r = resources_[resource_id];
    ++result_.failures;
    if (tracing()) trace_->emit(events_.now(), "failure", r.name(), "breakdown");
    // A job in progress finishes before the breakdown takes hold.
    r.set_failure_pending(true);
    if (r.in_service() == 0) begin_repair(r);
  }

  void begin_repair(sim::Resource& r) {
    const Minutes now = events_.now();
    r.set_down(true, now);
    const Minutes repair = cfg_.failure->repair.sample(stream(rng::Source::failure));
    events_.schedule(now + repair, sim::EventKind::repair, r.id());
  }

  void on_repair(std::uint32_t resource_id) {
    const Minutes now = events_.now();
    auto& r = resources_[resource_id];
    r.set_down(false, now);
    if (tracing()) trace_->emit(now, "repair", r.name(), "back in service");
    schedule_failure(r, now);
    serve_point(resource_id / static_cast<std::uint32_t>(kResourceClassCount));
  }

  void finish() {
    const Minutes end = cfg_.replication_length;
    if (tracing()) trace_->emit(end, "end-replication", "model", fmt::format("length {:.6f}", end));
    std::uint64_t waiting = in_buffer_;
    for (const auto& q : point_queues_) waiting += q.size();
    for (auto& r : resources_) {
      r.accrue(end);
      waiting += static_cast<std::uint64_t>(r.in_service());
      result_.ledger.push_back(ResourceUsage{r.name(), class_of(r.id()), r.capacity(), r.rates(),
                                             r.busy_minutes(), r.idle_minutes(),
                                             r.overtime_minutes(), r.use_count()});
    }
    result_.in_system = waiting;
    result_.total_usage_cost = total_usage_cost(result_.ledger);
    if (result_.started_service > 0) {
      result_.mean_wait = wait_total_ / static_cast<double>(result_.started_service);
    }
    if (result_.disposed > 0) {
      result_.mean_sojourn = sojourn_total_ / static_cast<double>(result_.disposed);
    }
  }

  const CrossdockModel& model_;
  const ModelConfig& cfg_;
  sim::EventQueue events_;
  sim::TraceLog* trace_;
  OrderLog* orders_log_;
  std::vector<rng::Stream> streams_;
  std::vector<sim::Resource> resources_;
  std::vector<std::deque<std::uint32_t>> point_queues_;
  std::vector<Order> orders_;
  std::uint64_t in_buffer_ = 0;
  double wait_total_ = 0.0;
  double sojourn_total_ = 0.0;
  ReplicationResult result_;
};

}  // namespace

ReplicationResult CrossdockModel::run_replication(std::uint64_t root_seed, std::uint64_t index,
                                                  sim::TraceLog* trace, OrderLog* orders) const {
  return Replication(*this, root_seed, index, trace, orders).run();
}

}  // namespace crossdock::model
