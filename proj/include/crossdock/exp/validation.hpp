#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossdock/exp/config_io.hpp"
#include "crossdock/sim/trace.hpp"

namespace crossdock::exp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::string excerpt;  // trace lines around the first failure
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] std::string render() const;
};

struct ValidationOptions {
  std::uint64_t fixed_batch = 100;            // orders scheduled for the conservation check
  double reduced_length = 14'400.0;           // ten days
  std::size_t reduced_types = 3;              // order types kept in the reduced mix
  double inflation = 2.0;                     // service-time multiplier for forced variation
  std::uint64_t variation_replications = 10;  // paired replications for the variation check
};

/// Visual-check protocol run in trace mode against a reduced scenario:
///  (a) every configured order type is released into the system;
///  (b) every order follows the forward processing sequence;
///  (c) a fixed batch of k orders gives exactly k created and k disposed;
///  (d) inflating service times raises the mean queue wait under shared seeds.
ValidationReport run_visual_checks(const ExperimentConfig& config,
                                   const ValidationOptions& options = {});

/// Check (b) on its own: returns an empty string when every `order-*`
/// subject in the trace moves forward through create -> [buffer-start ->
/// buffer-end] -> enqueue -> start-service -> end-service -> dispose, with
/// non-decreasing times; otherwise a description of the first violation.
std::string check_forward_routing(const std::vector<sim::TraceEvent>& events, bool buffered);

}  // namespace crossdock::exp
