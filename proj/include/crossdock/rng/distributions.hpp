#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crossdock/rng/streams.hpp"

namespace crossdock::rng {

// Every sampler is an inverse-CDF transform of exactly one uniform, so two
// model variants fed the same stream stay in lockstep whatever the
// parameters are.

double exponential_from_uniform(double mean, double u) noexcept;
double triangular_from_uniform(double min, double mode, double max, double u) noexcept;

struct Exponential {
  double mean = 1.0;  // +inf disables the process that uses it

  [[nodiscard]] bool disabled() const noexcept;
  double sample(Stream& stream) const noexcept {
    return exponential_from_uniform(mean, stream.uniform());
  }
};

struct Triangular {
  double min = 0.0;
  double mode = 0.5;
  double max = 1.0;

  [[nodiscard]] double mean() const noexcept { return (min + mode + max) / 3.0; }
  [[nodiscard]] double cdf(double x) const noexcept;
  double sample(Stream& stream) const noexcept {
    return triangular_from_uniform(min, mode, max, stream.uniform());
  }
};

class Discrete {
 public:
  Discrete() = default;
  explicit Discrete(std::vector<double> weights);

  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
  [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }

  /// Index of the first cumulative bucket exceeding u. Zero-weight
  /// categories are never returned.
  [[nodiscard]] std::size_t from_uniform(double u) const noexcept;
  std::size_t sample(Stream& stream) const noexcept { return from_uniform(stream.uniform()); }

 private:
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::size_t last_positive_ = 0;
};

using DistributionSpec = std::variant<Exponential, Triangular, Discrete>;

/// Throws std::invalid_argument naming `what` when the parameters are out of
/// range: exponential mean must be > 0; triangular needs min <= mode <= max
/// with min < max; discrete weights must be non-negative and sum to 1 within
/// 1e-9.
void validate(const Exponential& d, const std::string& what);
void validate(const Triangular& d, const std::string& what);
void validate(const Discrete& d, const std::string& what);
void validate(const DistributionSpec& d, const std::string& what);

}  // namespace crossdock::rng
