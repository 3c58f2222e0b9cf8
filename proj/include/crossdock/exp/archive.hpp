#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crossdock/exp/config_io.hpp"
#include "crossdock/model/crossdock_model.hpp"
#include "crossdock/stats/sequential.hpp"
#include "crossdock/stats/summary.hpp"

namespace crossdock::exp {

inline constexpr int kArchiveFormat = 1;

/// Run archive layout (plain text, one replication per CSV row):
///
///   # crossdock-sim run archive
///   # format: 1
///   # version: <library version>
///   # config-begin
///   # <resolved YAML configuration, one line per comment>
///   # config-end
///   replication,total_usage_cost,...,<resource>.busy_min,...
///   0,...
///   # summary-begin
///   # n: ...            (and mean, sd, min, max, half_width, confidence)
///   # stop_reason: ...
///   # summary-end
///
/// Reals are written with 17 significant digits so every value reloads
/// bit-exactly.
struct RunArchive {
  std::string version;
  ExperimentConfig config;          // variant and mode inside
  std::vector<std::string> resource_names;
  std::vector<model::ReplicationResult> rows;
  std::vector<std::pair<std::string, std::string>> footer;  // key, value as written
  stats::StopReason stop_reason = stats::StopReason::running;

  [[nodiscard]] std::vector<double> costs() const;
};

class ArchiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Streams an archive as rows are committed, so long runs need not keep
/// every row in memory.
class ArchiveWriter {
 public:
  ArchiveWriter(std::ostream& out, const ExperimentConfig& config,
                const std::vector<std::string>& resource_names);

  void write_row(const model::ReplicationResult& row);
  void write_footer(const stats::SummaryStats& summary, stats::StopReason reason);

 private:
  std::ostream& out_;
  std::size_t resources_;
};

/// Footer key/value pairs exactly as the writer formats them.
std::vector<std::pair<std::string, std::string>> format_footer(const stats::SummaryStats& summary,
                                                                stats::StopReason reason);

/// Parses an archive. Ledger rates and classes are restored from the
/// embedded configuration. Throws ArchiveError.
RunArchive read_archive(std::istream& in, const std::string& origin = "<archive>");
RunArchive read_archive_file(const std::string& path);

/// True when summarizing the rows reproduces the stored footer exactly.
bool footer_matches_rows(const RunArchive& archive);

}  // namespace crossdock::exp
