#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace crossdock::stats {

enum class ComparisonKind { paired_means, variance_ratio };
enum class Verdict { fail_to_reject, reject };

struct SeriesExtent {
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

/// Result of a two-series comparison in the layout of a classic simulation
/// output analyser.
///
/// For paired means: `estimate` is mean(a - b), `sd` the standard deviation
/// of the differences and `half_width` the CI half-width. For variance ratio:
/// `estimate` is var(a) / var(b) and `sd`/`half_width` are unused (NaN).
struct ComparisonReport {
  ComparisonKind kind = ComparisonKind::paired_means;
  std::string identifier;
  double estimate = 0.0;
  double sd = 0.0;
  double half_width = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  SeriesExtent a;
  SeriesExtent b;
  double alpha = 0.05;
  Verdict verdict = Verdict::fail_to_reject;
};

/// Paired-t comparison on per-index differences. Valid for correlated
/// inputs such as runs sharing random-number streams. Throws
/// std::invalid_argument on length mismatch or fewer than 2 pairs.
ComparisonReport paired_t_compare(std::span<const double> a, std::span<const double> b,
                                  double alpha = 0.05,
                                  std::string identifier = "Total Usage Cost");

/// F-based comparison of var(a) / var(b). Throws std::invalid_argument when
/// either series has fewer than 2 values or var(b) is zero.
ComparisonReport variance_ratio_compare(std::span<const double> a, std::span<const double> b,
                                        double alpha = 0.05,
                                        std::string identifier = "Total Usage Cost");

/// Fixed-column text block: title, header row, value row, verdict line.
std::string render_report(const ComparisonReport& report);

/// `key,value` lines for machine consumption.
std::string render_delimited(const ComparisonReport& report);

std::string verdict_line(const ComparisonReport& report);

}  // namespace crossdock::stats
