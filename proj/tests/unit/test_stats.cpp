#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "../oracles/fixtures.hpp"
#include "crossdock/stats/comparison.hpp"
#include "crossdock/stats/quantiles.hpp"
#include "crossdock/stats/sequential.hpp"
#include "crossdock/stats/summary.hpp"

using namespace crossdock::stats;
using doctest::Approx;

TEST_SUITE("quantiles") {
  TEST_CASE("student t table") {
    for (const auto& row : oracle::kStudentT) {
      CAPTURE(row.df);
      CHECK(student_t_quantile(0.975, row.df) == Approx(row.q975).epsilon(1e-8));
      CHECK(student_t_quantile(0.995, row.df) == Approx(row.q995).epsilon(1e-8));
      CHECK(student_t_quantile(0.025, row.df) == Approx(-row.q975).epsilon(1e-8));
      CHECK(student_t_cdf(row.q975, row.df) == Approx(0.975).epsilon(1e-9));
    }
  }

  TEST_CASE("fisher f table") {
    for (const auto& row : oracle::kFisherF) {
      CAPTURE(row.d1);
      CAPTURE(row.d2);
      CHECK(fisher_f_quantile(0.975, row.d1, row.d2) == Approx(row.q975).epsilon(1e-8));
      CHECK(fisher_f_quantile(0.95, row.d1, row.d2) == Approx(row.q95).epsilon(1e-8));
      CHECK(fisher_f_cdf(row.q975, row.d1, row.d2) == Approx(0.975).epsilon(1e-9));
    }
    // reciprocal identity
    CHECK(fisher_f_quantile(0.025, 5, 10) == Approx(1.0 / fisher_f_quantile(0.975, 10, 5)));
  }

  TEST_CASE("normal") {
    CHECK(normal_quantile(0.975) == Approx(oracle::kZ975).epsilon(1e-11));
    CHECK(normal_quantile(0.5) == Approx(0.0));
    CHECK(normal_cdf(1.0) == Approx(0.8413447460685429).epsilon(1e-12));
    for (double p : {1e-10, 0.001, 0.3, 0.9, 0.999999}) CHECK(normal_cdf(normal_quantile(p)) == Approx(p).epsilon(1e-10));
  }

  TEST_CASE("incomplete beta closed forms") {
    CHECK(incomplete_beta(1, 1, 0.3) == Approx(0.3));
    CHECK(incomplete_beta(2, 1, 0.3) == Approx(0.09));
    CHECK(incomplete_beta(1, 3, 0.5) == Approx(1 - 0.125));
    CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
  }
}

TEST_SUITE("summary") {
  TEST_CASE("basic") {
    const std::vector<double> x{1, 2, 3};
    const auto s = summarize(x);
    CHECK(s.n == 3);
    CHECK(s.mean == 2);
    CHECK(*s.sd == Approx(1));
    CHECK(s.min == 1);
    CHECK(s.max == 3);
    CHECK(*s.half_width == Approx(2.4842).epsilon(1e-4));
  }

  TEST_CASE("single value and constant samples") {
    const std::vector<double> one{5};
    const auto s = summarize(one);
    CHECK(s.mean == 5);
    CHECK_FALSE(s.sd);
    CHECK_FALSE(s.half_width);
    const std::vector<double> flat{4, 4, 4, 4};
    CHECK(*half_width(flat) == 0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
  }

  TEST_CASE("fixture half-widths") {
    for (const auto& f : oracle::stats_fixtures()) {
      CHECK(*half_width(f.a) == Approx(f.half_width_a).epsilon(1e-8));
    }
  }
}

TEST_SUITE("sequential") {
  namespace {
  SequentialState state_with(std::uint64_t n, double sd) {
    // n values with the given sample sd, symmetric around 100
    SequentialState s;
    const double step = sd * std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    for (std::uint64_t i = 0; i < n; ++i) s.add(100 + ((i % 2 == 0) ? step : -step));
    return s;
  }
  }  // namespace

  TEST_CASE("minimum replications forces continuation") {
    SequentialState s;
    s.add(1.0);
    s.add(1.0);  // half-width 0 but only two done
    const SequentialConfig cfg{0.5, 0.95, 999'999, 3};
    CHECK(sequential_should_continue(s, cfg));
    s.add(1.0);
    CHECK_FALSE(sequential_should_continue(s, cfg));
    CHECK(sequential_stop_reason(s, cfg) == StopReason::target_met);
  }

  TEST_CASE("target met at n=500") {
    const auto s = state_with(500, 4.4);  // hw = 1.9647*4.4/sqrt(500) ~ 0.387
    CHECK(*s.half_width(0.95) < 0.5);
    CHECK(sequential_stop_reason(s, {0.5, 0.95, 999'999, 3}) == StopReason::target_met);
  }

  TEST_CASE("cap reached with half-width still wide") {
    // Use a small cap for speed; the rule is the same at 999,999.
    const auto s = state_with(1000, 45);
    CHECK(*s.half_width(0.95) > 2.0);
    CHECK(sequential_stop_reason(s, {0.5, 0.95, 1000, 3}) == StopReason::cap_reached);
    CHECK(sequential_stop_reason(s, {0.5, 0.95, 1001, 3}) == StopReason::running);
  }

  TEST_CASE("welford matches two-pass") {
    SequentialState s;
    std::vector<double> x;
    std::mt19937_64 g(3);
    std::normal_distribution<double> nd(150'000, 2000);
    for (int i = 0; i < 1000; ++i) {
      x.push_back(nd(g));
      s.add(x.back());
    }
    CHECK(*s.sd() == Approx(*sample_sd(x)).epsilon(1e-10));
    CHECK(s.mean() == Approx(summarize(x).mean).epsilon(1e-14));
  }

  TEST_CASE("run_sequential stops as soon as the rule allows") {
    std::mt19937_64 g(9);
    std::normal_distribution<double> nd(0, 1);
    const SequentialConfig cfg{0.2, 0.95, 100'000, 3};
    const auto out = run_sequential(cfg, [&](std::uint64_t) { return nd(g); });
    CHECK(out.reason == StopReason::target_met);
    CHECK(*out.half_width <= 0.2);
    // one fewer would not have met the target
    const auto sample = out.state.sample();
    CHECK(*half_width(sample.first(sample.size() - 1)) > 0.2);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS((SequentialConfig{0, 0.95, 10, 3}.validate()));
    CHECK_THROWS((SequentialConfig{0.5, 1.0, 10, 3}.validate()));
    CHECK_THROWS((SequentialConfig{0.5, 0.95, 2, 3}.validate()));
    CHECK_THROWS((SequentialConfig{0.5, 0.95, 10, 1}.validate()));
  }

  TEST_CASE("expected replications") {
    CHECK(expected_replications(1.0, 1.0) == 4);
    CHECK(expected_replications(1000, 0.5) == oracle::kExpectedReps_sd1000_t05);
    CHECK(expected_replications(0.0, 0.5) == 1);
    CHECK(expected_replications(1e-9, 0.5) == 1);
  }

  TEST_CASE("stop reason strings") {
    for (auto r : {StopReason::target_met, StopReason::cap_reached, StopReason::fixed_complete}) {
      CHECK(stop_reason_from_string(to_string(r)) == r);
    }
    CHECK(to_string(StopReason::target_met) == "target-met");
  }
}

TEST_SUITE("comparison") {
  TEST_CASE("fixtures against the scipy oracle") {
    for (const auto& f : oracle::stats_fixtures()) {
      const auto m = paired_t_compare(f.a, f.b, 0.05);
      CHECK(m.estimate == Approx(f.diff_mean).epsilon(1e-8));
      CHECK(m.ci_low == Approx(f.diff_low).epsilon(1e-8));
      CHECK(m.ci_high == Approx(f.diff_high).epsilon(1e-8));
      CHECK((m.verdict == Verdict::reject) == f.means_reject);
      const auto v = variance_ratio_compare(f.a, f.b, 0.05);
      CHECK(v.estimate == Approx(f.var_ratio).epsilon(1e-8));
      CHECK(v.ci_low == Approx(f.ratio_low).epsilon(1e-8));
      CHECK(v.ci_high == Approx(f.ratio_high).epsilon(1e-8));
      CHECK((v.verdict == Verdict::reject) == f.variances_reject);
    }
  }

  TEST_CASE("identical series") {
    const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6};
    const auto m = paired_t_compare(a, a);
    CHECK(m.estimate == 0);
    CHECK(m.verdict == Verdict::fail_to_reject);
    const auto v = variance_ratio_compare(a, a);
    CHECK(v.estimate == 1);
    CHECK(v.verdict == Verdict::fail_to_reject);
  }

  TEST_CASE("variance four times larger is detected at n=500") {
    std::mt19937_64 g(21);
    std::normal_distribution<double> wide(0, 2);
    std::normal_distribution<double> narrow(0, 1);
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 0; i < 500; ++i) {
      a.push_back(wide(g));
      b.push_back(narrow(g));
    }
    const auto v = variance_ratio_compare(a, b);
    CHECK(v.verdict == Verdict::reject);
    CHECK(v.ci_low > 1.0);
  }

  TEST_CASE("errors") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    const std::vector<double> flat{2, 2, 2};
    CHECK_THROWS_AS(paired_t_compare(a, b), std::invalid_argument);
    CHECK_THROWS_AS(paired_t_compare(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
    CHECK_THROWS_AS(variance_ratio_compare(a, flat), std::invalid_argument);
  }

  TEST_CASE("rendered layout") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 4, 6};
    const auto means = render_report(paired_t_compare(a, b));
    CHECK(means.find("Paired-T Means Comparison:") != std::string::npos);
    for (const char* h : {"IDENTIFIER", "ESTD. MEAN DIFFERENCE", "STANDARD DEVIATION",
                          "0.950 C.I. HALF-WIDTH", "MINIMUM VALUE", "MAXIMUM VALUE",
                          "NUMBER OF OBS", "FAIL TO REJECT H0 => MEANS ARE EQUAL AT 0.05 LEVEL"}) {
      CHECK_MESSAGE(means.find(h) != std::string::npos, h);
    }
    const auto vars = render_report(variance_ratio_compare(a, b));
    for (const char* h : {"Variances Comparison:", "VARIANCE RATIO", "UPPER 0.950 C.I.LIMIT",
                          "LOWER 0.950 C.I.LIMIT", "VARIANCES ARE EQUAL AT 0.05 LEVEL"}) {
      CHECK_MESSAGE(vars.find(h) != std::string::npos, h);
    }
    CHECK(render_delimited(paired_t_compare(a, b)).find("estimate,-2") != std::string::npos);
  }
}
