#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "crossdock/model/model_config.hpp"
#include "crossdock/stats/sequential.hpp"

namespace crossdock::exp {

struct FixedMode {
  std::uint64_t replications = 500;

  friend bool operator==(const FixedMode&, const FixedMode&) = default;
};

using RunMode = std::variant<FixedMode, stats::SequentialConfig>;

/// Parses "fixed:N" or "sequential". Throws model::ConfigError.
RunMode parse_mode(const std::string& text, const stats::SequentialConfig& sequential);
std::string format_mode(const RunMode& mode);

/// Everything a configuration file can say. The buffer delay is kept apart
/// from the model so one file serves every variant; resolve() attaches it
/// only for the buffered variants.
struct ExperimentConfig {
  model::ModelConfig model;
  std::optional<rng::Triangular> buffer_delay = model::kDefaultBufferDelay;
  model::Variant variant = model::Variant::base;
  RunMode mode = FixedMode{500};
  stats::SequentialConfig sequential;
  std::uint64_t root_seed = rng::kDefaultRootSeed;
  double alpha = 0.05;

  /// Model config for `variant`: buffer attached iff the variant is buffered.
  /// Throws model::ConfigError when a buffered variant has no buffer delay.
  [[nodiscard]] model::ModelConfig resolve(model::Variant variant) const;
};

/// Built-in defaults (used when no file is given).
ExperimentConfig default_experiment_config();

/// Parses YAML text. Errors carry `<origin>:<line>: message` (1-based line).
ExperimentConfig parse_experiment_config(const std::string& yaml_text,
                                         const std::string& origin = "<config>");
ExperimentConfig load_experiment_config(const std::string& path);

/// Emits a YAML document that parse_experiment_config reads back to an
/// identical configuration (doubles are written with 17 significant digits).
std::string emit_experiment_config(const ExperimentConfig& config);

}  // namespace crossdock::exp
