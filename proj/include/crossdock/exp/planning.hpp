#pragma once

#include <cstdint>
#include <optional>

#include "crossdock/exp/archive.hpp"

namespace crossdock::exp {

struct PlanEstimate {
  std::uint64_t replications = 1;
  double sd = 0.0;
  double target = 0.0;
  double confidence = 0.95;
  std::optional<std::uint64_t> pilot_n;  // set when planned from an archive
  std::optional<double> seconds_per_replication;
  std::optional<double> estimated_seconds;
};

/// ceil((z * sd / target)^2) for a standard deviation known up front.
PlanEstimate plan_from_sd(double sd, double target, double confidence = 0.95);

/// ceil((t_{n-1} * sd / target)^2) with sd and n taken from a pilot archive.
/// Throws std::invalid_argument if the archive has fewer than 2 rows.
PlanEstimate plan_from_archive(const RunArchive& pilot, double target, double confidence = 0.95);

/// Times a few replications of the archive's own configuration and fills in
/// the wall-time fields.
void attach_timing(PlanEstimate& plan, const ExperimentConfig& config, unsigned probes = 3);

}  // namespace crossdock::exp
