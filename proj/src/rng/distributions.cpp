#include "crossdock/rng/distributions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace crossdock::rng {

double exponential_from_uniform(double mean, double u) noexcept {
  if (u <= 0.0) return 0.0;
  return -mean * std::log1p(-u);
}

double triangular_from_uniform(double min, double mode, double max, double u) noexcept {
  const double range = max - min;
  const double split = (mode - min) / range;
  if (u < split) return min + std::sqrt(u * range * (mode - min));
  return max - std::sqrt((1.0 - u) * range * (max - mode));
}

bool Exponential::disabled() const noexcept { return std::isinf(mean); }

double Triangular::cdf(double x) const noexcept {
  if (x <= min) return 0.0;
  if (x >= max) return 1.0;
  const double range = max - min;
  if (x <= mode) return (x - min) * (x - min) / (range * (mode - min));
  return 1.0 - (max - x) * (max - x) / (range * (max - mode));
}

Discrete::Discrete(std::vector<double> weights) : weights_(std::move(weights)) {
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) last_positive_ = i;
  }
}

std::size_t Discrete::from_uniform(double u) const noexcept {
  for (std::size_t i = 0; i < cumulative_.size(); ++i) {
    if (weights_[i] > 0.0 && u < cumulative_[i]) return i;
  }
  // Rounding can leave the final cumulative a hair under 1.
  return last_positive_;
}

void validate(const Exponential& d, const std::string& what) {
  if (std::isnan(d.mean) || !(d.mean > 0.0)) {
    throw std::invalid_argument(
        fmt::format("{}: exponential mean must be > 0 (got {})", what, d.mean));
  }
}

void validate(const Triangular& d, const std::string& what) {
  const bool finite = std::isfinite(d.min) && std::isfinite(d.mode) && std::isfinite(d.max);
  if (!finite || !(d.min <= d.mode && d.mode <= d.max) || !(d.min < d.max)) {
    throw std::invalid_argument(fmt::format(
        "{}: triangular needs min <= mode <= max with min < max (got {}, {}, {})", what, d.min,
        d.mode, d.max));
  }
}

void validate(const Discrete& d, const std::string& what) {
  if (d.size() == 0) throw std::invalid_argument(what + ": discrete distribution has no weights");
  double total = 0.0;
  for (const double w : d.weights()) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(fmt::format("{}: weights must be non-negative (got {})", what, w));
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(fmt::format("{}: weights must sum to 1 (got {:.12g})", what, total));
  }
}

void validate(const DistributionSpec& d, const std::string& what) {
  std::visit([&](const auto& dist) { validate(dist, what); }, d);
}

}  // namespace crossdock::rng
