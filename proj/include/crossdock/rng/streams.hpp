#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace crossdock::rng {

inline constexpr std::uint64_t kDefaultRootSeed = 12345;

/// Sources of model randomness. Each gets its own substream under common
/// random numbers. `routing` is the companion of `order_type_mix` that
/// assigns orders to picking points.
enum class Source : std::uint8_t {
  arrivals,
  order_type_mix,
  manual_pick,
  auto_dispense,
  buffer,
  failure,
  routing,
};

inline constexpr std::array<Source, 7> kAllSources = {
    Source::arrivals, Source::order_type_mix, Source::manual_pick, Source::auto_dispense,
    Source::buffer,   Source::failure,        Source::routing,
};

std::string_view to_string(Source source) noexcept;

struct StreamId {
  Source source = Source::arrivals;
  std::uint64_t replication = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Single-owner uniform generator for one (root seed, StreamId) pair.
///
/// The state is derived from the seed and id alone, so a substream never
/// depends on how much any other substream has been consumed.
class Stream {
 public:
  Stream(std::uint64_t root_seed, StreamId id);

  /// Next uniform in [0, 1) with 53 random bits.
  double uniform() noexcept {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  [[nodiscard]] const StreamId& id() const noexcept { return id_; }
  [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

 private:
  StreamId id_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

inline Stream substream(std::uint64_t root_seed, StreamId id) { return Stream(root_seed, id); }

}  // namespace crossdock::rng
