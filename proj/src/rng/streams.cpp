#include "crossdock/rng/streams.hpp"

namespace crossdock::rng {

std::string_view to_string(Source source) noexcept {
  switch (source) {
    case Source::arrivals: return "arrivals";
    case Source::order_type_mix: return "order-type-mix";
    case Source::manual_pick: return "manual-pick";
    case Source::auto_dispense: return "auto-dispense";
    case Source::buffer: return "buffer";
    case Source::failure: return "failure";
    case Source::routing: return "routing";
  }
  return "unknown";
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t root_seed, StreamId id) {
  // seed_seq mixing is fully specified by the standard, so the substream is
  // the same on every conforming platform.
  std::seed_seq seq{
      static_cast<std::uint32_t>(root_seed),
      static_cast<std::uint32_t>(root_seed >> 32),
      static_cast<std::uint32_t>(id.source) + 1u,
      static_cast<std::uint32_t>(id.replication),
      static_cast<std::uint32_t>(id.replication >> 32),
      0x63726f73u,  // domain tag
  };
  return std::mt19937_64(seq);
}

}  // namespace

Stream::Stream(std::uint64_t root_seed, StreamId id)
    : id_(id), engine_(seeded_engine(root_seed, id)) {}

}  // namespace crossdock::rng
