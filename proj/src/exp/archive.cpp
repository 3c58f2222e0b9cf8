#include "crossdock/exp/archive.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace crossdock::exp {

namespace {

constexpr std::string_view kFixedColumns[] = {
    "replication", "total_usage_cost", "created",          "disposed", "in_system",
    "started_service", "mean_wait_min", "mean_sojourn_min", "failures"};
constexpr std::string_view kResourceColumns[] = {"busy_min", "idle_min", "overtime_min", "uses"};

std::string real(double x) { return fmt::format("{:.17g}", x); }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> RunArchive::costs() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.total_usage_cost);
  return out;
}

ArchiveWriter::ArchiveWriter(std::ostream& out, const ExperimentConfig& config,
                             const std::vector<std::string>& resource_names)
    : out_(out), resources_(resource_names.size()) {
  out_ << "# crossdock-sim run archive\n";
  out_ << "# format: " << kArchiveFormat << "\n";
  out_ << "# version: " << CROSSDOCK_VERSION << "\n";
  out_ << "# config-begin\n";
  std::istringstream yaml(emit_experiment_config(config));
  for (std::string line; std::getline(yaml, line);) out_ << "# " << line << "\n";
  out_ << "# config-end\n";
  std::string header;
  for (const auto col : kFixedColumns) {
    if (!header.empty()) header += ',';
    header += col;
  }
  for (const auto& name : resource_names) {
    for (const auto col : kResourceColumns) header += fmt::format(",{}.{}", name, col);
  }
  out_ << header << "\n";
}

void ArchiveWriter::write_row(const model::ReplicationResult& r) {
  if (r.ledger.size() != resources_) {
    throw ArchiveError("archive row has a different resource count than the header");
  }
  std::string line = fmt::format("{},{},{},{},{},{},{},{},{}", r.replication,
                                 real(r.total_usage_cost), r.created, r.disposed, r.in_system,
                                 r.started_service, real(r.mean_wait), real(r.mean_sojourn),
                                 r.failures);
  for (const auto& u : r.ledger) {
    line += fmt::format(",{},{},{},{}", real(u.busy), real(u.idle), real(u.overtime), u.uses);
  }
  out_ << line << "\n";
  if (!out_) throw ArchiveError("write failed");
}

std::vector<std::pair<std::string, std::string>> format_footer(const stats::SummaryStats& s,
                                                                stats::StopReason reason) {
  auto optional_real = [](const std::optional<double>& x) {
    return x ? real(*x) : std::string("absent");
  };
  return {
      {"n", std::to_string(s.n)},
      {"mean", real(s.mean)},
      {"sd", optional_real(s.sd)},
      {"min", real(s.min)},
      {"max", real(s.max)},
      {"half_width", optional_real(s.half_width)},
      {"confidence", real(s.confidence)},
      {"stop_reason", std::string(stats::to_string(reason))},
  };
}

void ArchiveWriter::write_footer(const stats::SummaryStats& summary, stats::StopReason reason) {
  out_ << "# summary-begin\n";
  for (const auto& [key, value] : format_footer(summary, reason)) {
    out_ << "# " << key << ": " << value << "\n";
  }
  out_ << "# summary-end\n";
  out_.flush();
  if (!out_) throw ArchiveError("write failed");
}

namespace {

class Parser {
 public:
  explicit Parser(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw ArchiveError(fmt::format("{}:{}: {}", origin_, line, message));
  }

  template <class T>
  T number(std::string_view text, std::size_t line) const {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(line, fmt::format("malformed number '{}'", text));
    }
    return value;
  }

 private:
  std::string origin_;
};

}  // namespace

RunArchive read_archive(std::istream& in, const std::string& origin) {
  const Parser p(origin);
  RunArchive a;
  enum class Section { preamble, config, rows, footer, done } section = Section::preamble;
  std::string yaml;
  bool have_header = false;
  bool have_config = false;
  model::ModelConfig resolved;
  std::size_t line_no = 0;

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string_view text(line);
    switch (section) {
      case Section::preamble:
        if (text == "# config-begin") {
          section = Section::config;
        } else if (text.rfind("# version: ", 0) == 0) {
          a.version = std::string(text.substr(11));
        } else if (text.rfind("# format: ", 0) == 0) {
          if (p.number<int>(text.substr(10), line_no) != kArchiveFormat) {
            p.fail(line_no, "unsupported archive format");
          }
        } else if (text[0] != '#') {
          p.fail(line_no, "data before the configuration block");
        }
        break;
      case Section::config:
        if (text == "# config-end") {
          try {
            a.config = parse_experiment_config(yaml, origin + " (embedded config)");
            resolved = a.config.resolve(a.config.variant);
          } catch (const model::ConfigError& e) {
            p.fail(line_no, e.what());
          }
          have_config = true;
          section = Section::rows;
        } else {
          if (text.rfind("# ", 0) == 0) {
            yaml += line.substr(2);
          } else if (text != "#") {
            p.fail(line_no, "configuration lines must start with '# '");
          }
          yaml += '\n';
        }
        break;
      case Section::rows: {
        if (text == "# summary-begin") {
          section = Section::footer;
          break;
        }
        if (text[0] == '#') break;
        const auto cells = split(text, ',');
        if (!have_header) {
          const std::size_t fixed = std::size(kFixedColumns);
          const std::size_t per = std::size(kResourceColumns);
          if (cells.size() < fixed || (cells.size() - fixed) % per != 0) {
            p.fail(line_no, "malformed column header");
          }
          for (std::size_t i = 0; i < fixed; ++i) {
            if (cells[i] != kFixedColumns[i]) p.fail(line_no, fmt::format("unexpected column '{}'", cells[i]));
          }
          for (std::size_t i = fixed; i < cells.size(); i += per) {
            const auto col = cells[i];
            const auto dot = col.rfind('.');
            a.resource_names.emplace_back(col.substr(0, dot));
          }
          have_header = true;
          break;
        }
        const std::size_t expected = std::size(kFixedColumns) + a.resource_names.size() * 4;
        if (cells.size() != expected) {
          p.fail(line_no, fmt::format("expected {} fields, found {}", expected, cells.size()));
        }
        model::ReplicationResult r;
        r.replication = p.number<std::uint64_t>(cells[0], line_no);
        r.total_usage_cost = p.number<double>(cells[1], line_no);
        r.created = p.number<std::uint64_t>(cells[2], line_no);
        r.disposed = p.number<std::uint64_t>(cells[3], line_no);
        r.in_system = p.number<std::uint64_t>(cells[4], line_no);
        r.started_service = p.number<std::uint64_t>(cells[5], line_no);
        r.mean_wait = p.number<double>(cells[6], line_no);
        r.mean_sojourn = p.number<double>(cells[7], line_no);
        r.failures = p.number<std::uint64_t>(cells[8], line_no);
        std::size_t c = std::size(kFixedColumns);
        for (const auto& name : a.resource_names) {
          model::ResourceUsage u;
          u.name = name;
          const auto suffix = std::string_view(name).substr(name.rfind('.') + 1);
          u.resource_class = model::ResourceClass::automated;
          for (auto cls : {model::ResourceClass::automated, model::ResourceClass::skilled,
                           model::ResourceClass::unskilled}) {
            if (model::to_string(cls) == suffix) u.resource_class = cls;
          }
          u.capacity = resolved.staffing.of(u.resource_class);
          u.rates = resolved.costs.of(u.resource_class);
          u.busy = p.number<double>(cells[c++], line_no);
          u.idle = p.number<double>(cells[c++], line_no);
          u.overtime = p.number<double>(cells[c++], line_no);
          u.uses = p.number<std::uint64_t>(cells[c++], line_no);
          r.ledger.push_back(std::move(u));
        }
        a.rows.push_back(std::move(r));
        break;
      }
      case Section::footer: {
        if (text == "# summary-end") {
          section = Section::done;
          break;
        }
        const auto colon = text.find(": ");
        if (text.rfind("# ", 0) != 0 || colon == std::string_view::npos) {
          p.fail(line_no, "malformed summary line");
        }
        const std::string key(text.substr(2, colon - 2));
        const std::string value(text.substr(colon + 2));
        if (key == "stop_reason") {
          const auto reason = stats::stop_reason_from_string(value);
          if (!reason) p.fail(line_no, fmt::format("unknown stop reason '{}'", value));
          a.stop_reason = *reason;
        }
        a.footer.emplace_back(key, value);
        break;
      }
      case Section::done:
        if (text[0] != '#') p.fail(line_no, "data after the summary block");
        break;
    }
  }
  if (!have_config) p.fail(line_no, "missing configuration block");
  if (!have_header) p.fail(line_no, "missing column header");
  if (section != Section::done) p.fail(line_no, "missing or unterminated summary block");
  return a;
}

RunArchive read_archive_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArchiveError(fmt::format("{}: cannot open archive", path));
  return read_archive(in, path);
}

bool footer_matches_rows(const RunArchive& archive) {
  double confidence = 0.95;
  for (const auto& [key, value] : archive.footer) {
    if (key == "confidence") {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), confidence);
      if (ec != std::errc()) return false;
    }
  }
  const auto costs = archive.costs();
  if (costs.empty()) return false;
  return format_footer(stats::summarize(costs, confidence), archive.stop_reason) == archive.footer;
}

}  // namespace crossdock::exp
