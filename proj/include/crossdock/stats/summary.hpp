#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace crossdock::stats {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;          // absent for n < 2
  double min = 0.0;
  double max = 0.0;
  std::optional<double> half_width;  // absent for n < 2
  double confidence = 0.95;
};

/// Two-pass summary. Throws std::invalid_argument on an empty sample.
SummaryStats summarize(std::span<const double> sample, double confidence = 0.95);

/// Sample standard deviation (n - 1 denominator); absent for n < 2.
std::optional<double> sample_sd(std::span<const double> sample);

/// t_{n-1, 1-alpha/2} * sd / sqrt(n); absent when n < 2.
std::optional<double> half_width(std::span<const double> sample, double confidence = 0.95);

/// Same formula from sufficient statistics.
std::optional<double> half_width(std::size_t n, double sd, double confidence);

}  // namespace crossdock::stats
