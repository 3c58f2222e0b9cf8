#include "crossdock/exp/planning.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "crossdock/stats/quantiles.hpp"
#include "crossdock/stats/sequential.hpp"
#include "crossdock/stats/summary.hpp"

namespace crossdock::exp {

PlanEstimate plan_from_sd(double sd, double target, double confidence) {
  PlanEstimate plan;
  plan.sd = sd;
  plan.target = target;
  plan.confidence = confidence;
  plan.replications = stats::expected_replications(sd, target, confidence);
  return plan;
}

PlanEstimate plan_from_archive(const RunArchive& pilot, double target, double confidence) {
  const auto costs = pilot.costs();
  const auto sd = stats::sample_sd(costs);
  if (!sd) throw std::invalid_argument("plan: the pilot archive needs at least 2 replications");
  if (!(target > 0.0)) throw std::invalid_argument("plan: target must be > 0");
  PlanEstimate plan;
  plan.sd = *sd;
  plan.target = target;
  plan.confidence = confidence;
  plan.pilot_n = costs.size();
  const double t =
      stats::student_t_quantile(0.5 + 0.5 * confidence, static_cast<double>(costs.size() - 1));
  const double n = std::ceil(std::pow(t * *sd / target, 2));
  plan.replications = n < 1.0 ? 1 : static_cast<std::uint64_t>(n);
  return plan;
}

void attach_timing(PlanEstimate& plan, const ExperimentConfig& config, unsigned probes) {
  const auto model = model::CrossdockModel::build(config.variant, config.resolve(config.variant));
  const auto started = std::chrono::steady_clock::now();
  for (unsigned i = 0; i < probes; ++i) (void)model.run_replication(config.root_seed, i);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  plan.seconds_per_replication = elapsed / static_cast<double>(probes == 0 ? 1 : probes);
  plan.estimated_seconds = *plan.seconds_per_replication * static_cast<double>(plan.replications);
}

}  // namespace crossdock::exp
