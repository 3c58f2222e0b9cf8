#include "crossdock/exp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace crossdock::exp {

ExperimentSpec make_spec(const ExperimentConfig& config) {
  ExperimentSpec spec;
  spec.variant = config.variant;
  spec.model = config.resolve(config.variant);
  spec.mode = config.mode;
  spec.root_seed = config.root_seed;
  return spec;
}

std::vector<model::ReplicationResult> run_replications(const model::CrossdockModel& model,
                                                       std::uint64_t root_seed,
                                                       std::uint64_t first, std::uint64_t count,
                                                       unsigned workers) {
  std::vector<model::ReplicationResult> out(count);
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = model.run_replication(root_seed, first + i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t i = next++; i < count; i = next++) {
          try {
            out[i] = model.run_replication(root_seed, first + i);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

RunOutcome run_experiment(const ExperimentSpec& spec, const RowObserver& observer,
                          bool keep_rows) {
  const auto started = std::chrono::steady_clock::now();
  const auto model = model::CrossdockModel::build(spec.variant, spec.model);
  const unsigned workers = std::max(1u, spec.workers);

  RunOutcome outcome;
  stats::SequentialState state;
  const auto* sequential = std::get_if<stats::SequentialConfig>(&spec.mode);
  if (sequential) sequential->validate();
  const std::uint64_t target_count =
      sequential ? sequential->replication_cap : std::get<FixedMode>(spec.mode).replications;

  auto wants_more = [&] {
    if (sequential) return stats::sequential_should_continue(state, *sequential);
    return state.completed() < target_count;
  };

  // Sequential runs speculate one block ahead and discard whatever lies past
  // the stopping point; fixed runs use larger blocks.
  const std::uint64_t block = sequential ? workers : std::max<std::uint64_t>(64, 16ull * workers);
  while (wants_more()) {
    const std::uint64_t done = state.completed();
    const std::uint64_t count = std::min(block, target_count - done);
    auto results = run_replications(model, spec.root_seed, done, count, workers);
    for (auto& r : results) {
      if (!wants_more()) break;
      state.add(r.total_usage_cost);
      if (observer) observer(r);
      if (keep_rows) outcome.rows.push_back(std::move(r));
    }
  }

  outcome.costs.assign(state.sample().begin(), state.sample().end());
  const double confidence = sequential ? sequential->confidence : 0.95;
  outcome.summary = stats::summarize(outcome.costs, confidence);
  outcome.stop_reason = sequential ? stats::sequential_stop_reason(state, *sequential)
                                   : stats::StopReason::fixed_complete;
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return outcome;
}

}  // namespace crossdock::exp
