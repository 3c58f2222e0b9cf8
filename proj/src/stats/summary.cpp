#include "crossdock/stats/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crossdock/stats/quantiles.hpp"

namespace crossdock::stats {

namespace {

void check_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
}

double mean_of(std::span<const double> sample) {
  double sum = 0.0;
  for (const double x : sample) sum += x;
  return sum / static_cast<double>(sample.size());
}

}  // namespace

std::optional<double> sample_sd(std::span<const double> sample) {
  if (sample.size() < 2) return std::nullopt;
  const double mean = mean_of(sample);
  double ss = 0.0;
  for (const double x : sample) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(sample.size() - 1));
}

std::optional<double> half_width(std::size_t n, double sd, double confidence) {
  check_confidence(confidence);
  if (n < 2) return std::nullopt;
  const double t = student_t_quantile(0.5 + 0.5 * confidence, static_cast<double>(n - 1));
  return t * sd / std::sqrt(static_cast<double>(n));
}

std::optional<double> half_width(std::span<const double> sample, double confidence) {
  const auto sd = sample_sd(sample);
  if (!sd) {
    check_confidence(confidence);
    return std::nullopt;
  }
  return half_width(sample.size(), *sd, confidence);
}

SummaryStats summarize(std::span<const double> sample, double confidence) {
  if (sample.empty()) throw std::invalid_argument("summarize: sample is empty");
  check_confidence(confidence);
  SummaryStats s;
  s.n = sample.size();
  s.confidence = confidence;
  const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
  s.min = *lo;
  s.max = *hi;
  // Rounding in the sum can push the mean a ulp outside [min, max].
  s.mean = std::clamp(mean_of(sample), s.min, s.max);
  s.sd = sample_sd(sample);
  if (s.sd) s.half_width = half_width(s.n, *s.sd, confidence);
  return s;
}

}  // namespace crossdock::stats
