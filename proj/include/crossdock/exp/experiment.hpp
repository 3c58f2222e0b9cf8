#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "crossdock/exp/config_io.hpp"
#include "crossdock/model/crossdock_model.hpp"
#include "crossdock/stats/sequential.hpp"
#include "crossdock/stats/summary.hpp"

namespace crossdock::exp {

struct ExperimentSpec {
  model::Variant variant = model::Variant::base;
  model::ModelConfig model;  // already resolved for the variant
  RunMode mode = FixedMode{500};
  std::uint64_t root_seed = rng::kDefaultRootSeed;
  unsigned workers = 1;
};

/// Builds a spec from a parsed configuration, honouring its variant and mode.
ExperimentSpec make_spec(const ExperimentConfig& config);

struct RunOutcome {
  std::vector<double> costs;                  // Total Usage Cost per replication
  std::vector<model::ReplicationResult> rows;  // only when keep_rows was requested
  stats::SummaryStats summary;
  stats::StopReason stop_reason = stats::StopReason::running;
  double wall_seconds = 0.0;
};

/// Called once per committed replication, in replication-index order.
using RowObserver = std::function<void(const model::ReplicationResult&)>;

/// Runs the experiment. Replications are computed on `workers` threads but
/// committed strictly in index order, so the outcome (including where a
/// sequential run stops) does not depend on the worker count. Replication i
/// always uses substreams (root_seed, *, i).
RunOutcome run_experiment(const ExperimentSpec& spec, const RowObserver& observer = {},
                          bool keep_rows = false);

/// Runs replications [first, first + count) of a built model on `workers`
/// threads and returns them in index order.
std::vector<model::ReplicationResult> run_replications(const model::CrossdockModel& model,
                                                       std::uint64_t root_seed,
                                                       std::uint64_t first, std::uint64_t count,
                                                       unsigned workers);

}  // namespace crossdock::exp
