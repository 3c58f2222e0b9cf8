#include "crossdock/stats/comparison.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "crossdock/stats/quantiles.hpp"
#include "crossdock/stats/summary.hpp"

namespace crossdock::stats {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

SeriesExtent extent_of(std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {*lo, *hi, xs.size()};
}

double variance_of(std::span<const double> xs) {
  const double sd = *sample_sd(xs);
  return sd * sd;
}

std::string num(double x) { return fmt::format("{:.3g}", x); }

// Pads every column to its widest cell and joins with two spaces.
std::string table(const std::vector<std::string>& headers, const std::vector<std::string>& values) {
  std::string header_row;
  std::string value_row;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    const std::size_t width = std::max(headers[i].size(), values[i].size());
    const bool last = i + 1 == headers.size();
    header_row += last ? headers[i] : fmt::format("{:<{}}  ", headers[i], width);
    value_row += last ? values[i] : fmt::format("{:<{}}  ", values[i], width);
  }
  return header_row + "\n" + value_row + "\n";
}

std::string confidence_label(double alpha) { return fmt::format("{:.3f}", 1.0 - alpha); }

}  // namespace

ComparisonReport paired_t_compare(std::span<const double> a, std::span<const double> b,
                                  double alpha, std::string identifier) {
  check_alpha(alpha);
  if (a.size() != b.size()) {
    throw std::invalid_argument(fmt::format(
        "paired-t: series lengths differ ({} vs {}); the runs are not paired", a.size(), b.size()));
  }
  if (a.size() < 2) throw std::invalid_argument("paired-t: need at least 2 pairs");

  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  const SummaryStats d = summarize(diff, 1.0 - alpha);

  ComparisonReport r;
  r.kind = ComparisonKind::paired_means;
  r.identifier = std::move(identifier);
  r.alpha = alpha;
  double sum = 0.0;
  for (const double x : diff) sum += x;
  r.estimate = sum / static_cast<double>(diff.size());
  r.sd = *d.sd;
  r.half_width = *d.half_width;
  r.ci_low = r.estimate - r.half_width;
  r.ci_high = r.estimate + r.half_width;
  r.a = extent_of(a);
  r.b = extent_of(b);
  r.verdict = (r.ci_low <= 0.0 && 0.0 <= r.ci_high) ? Verdict::fail_to_reject : Verdict::reject;
  return r;
}

ComparisonReport variance_ratio_compare(std::span<const double> a, std::span<const double> b,
                                        double alpha, std::string identifier) {
  check_alpha(alpha);
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("variance ratio: each series needs at least 2 values");
  }
  const double var_b = variance_of(b);
  if (var_b == 0.0) {
    throw std::invalid_argument("variance ratio: second series has zero variance");
  }
  const double df_a = static_cast<double>(a.size() - 1);
  const double df_b = static_cast<double>(b.size() - 1);

  ComparisonReport r;
  r.kind = ComparisonKind::variance_ratio;
  r.identifier = std::move(identifier);
  r.alpha = alpha;
  r.estimate = variance_of(a) / var_b;
  r.sd = std::numeric_limits<double>::quiet_NaN();
  r.half_width = std::numeric_limits<double>::quiet_NaN();
  r.ci_low = r.estimate / fisher_f_quantile(1.0 - 0.5 * alpha, df_a, df_b);
  r.ci_high = r.estimate * fisher_f_quantile(1.0 - 0.5 * alpha, df_b, df_a);
  r.a = extent_of(a);
  r.b = extent_of(b);
  r.verdict = (r.ci_low <= 1.0 && 1.0 <= r.ci_high) ? Verdict::fail_to_reject : Verdict::reject;
  return r;
}

std::string verdict_line(const ComparisonReport& report) {
  const char* what = report.kind == ComparisonKind::paired_means ? "MEANS" : "VARIANCES";
  if (report.verdict == Verdict::fail_to_reject) {
    return fmt::format("FAIL TO REJECT H0 => {} ARE EQUAL AT {:g} LEVEL", what, report.alpha);
  }
  return fmt::format("REJECT H0 => {} ARE NOT EQUAL AT {:g} LEVEL", what, report.alpha);
}

std::string render_report(const ComparisonReport& r) {
  const std::string level = confidence_label(r.alpha);
  const std::string minimum = num(r.a.min) + " " + num(r.b.min);
  const std::string maximum = num(r.a.max) + " " + num(r.b.max);
  const std::string count = fmt::format("{} {}", r.a.n, r.b.n);

  std::string out;
  if (r.kind == ComparisonKind::paired_means) {
    out += "Paired-T Means Comparison:\n\n";
    out += table({"IDENTIFIER", "ESTD. MEAN DIFFERENCE", "STANDARD DEVIATION",
                  level + " C.I. HALF-WIDTH", "MINIMUM VALUE", "MAXIMUM VALUE", "NUMBER OF OBS"},
                 {r.identifier, num(r.estimate), num(r.sd), num(r.half_width), minimum, maximum,
                  count});
  } else {
    out += "Variances Comparison:\n\n";
    out += table({"IDENTIFIER", "VARIANCE RATIO", "UPPER " + level + " C.I.LIMIT",
                  "LOWER " + level + " C.I.LIMIT", "MINIMUM VALUE", "MAXIMUM VALUE",
                  "NUMBER OF OBS"},
                 {r.identifier, num(r.estimate), num(r.ci_high), num(r.ci_low), minimum, maximum,
                  count});
  }
  out += "\n" + verdict_line(r) + "\n";
  return out;
}

std::string render_delimited(const ComparisonReport& r) {
  std::string out;
  auto row = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{},{}\n", key, value);
  };
  auto real = [](double x) { return fmt::format("{:.17g}", x); };
  row("kind", r.kind == ComparisonKind::paired_means ? "paired-means" : "variance-ratio");
  row("identifier", r.identifier);
  row("estimate", real(r.estimate));
  if (r.kind == ComparisonKind::paired_means) {
    row("sd", real(r.sd));
    row("half_width", real(r.half_width));
  }
  row("ci_low", real(r.ci_low));
  row("ci_high", real(r.ci_high));
  row("alpha", real(r.alpha));
  row("a_min", real(r.a.min));
  row("a_max", real(r.a.max));
  row("a_n", std::to_string(r.a.n));
  row("b_min", real(r.b.min));
  row("b_max", real(r.b.max));
  row("b_n", std::to_string(r.b.n));
  row("verdict", r.verdict == Verdict::fail_to_reject ? "fail-to-reject" : "reject");
  return out;
}

}  // namespace crossdock::stats
