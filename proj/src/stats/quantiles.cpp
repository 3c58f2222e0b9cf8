#include "crossdock/stats/quantiles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace crossdock::stats {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

double beta_density(double a, double b, double x) {
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

// Solves I_y(a, b) = p for y by Newton steps kept inside a shrinking bracket.
double inverse_incomplete_beta(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  double y = a / (a + b);
  for (int iter = 0; iter < 500; ++iter) {
    const double f = incomplete_beta(a, b, y) - p;
    if (f == 0.0) return y;
    if (f < 0.0) lo = y; else hi = y;
    double next = y - f / beta_density(a, b, y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 4.0 * std::numeric_limits<double>::epsilon() * y) return next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    y = next;
  }
  return y;
}

void check_df(double df, const char* what) {
  if (!(df > 0.0) || std::isnan(df)) throw std::invalid_argument(std::string(what) + ": degrees of freedom must be > 0");
}

void check_probability(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument(std::string(what) + ": probability must lie in (0, 1)");
}

// P(T > t) for t >= 0.
double t_upper_tail(double t, double df) {
  return 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double t_density(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(t * t / df));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a and b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  check_df(df, "student_t_cdf");
  if (std::isnan(t)) return t;
  const double tail = t_upper_tail(std::abs(t), df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  check_df(df, "student_t_quantile");
  check_probability(p, "student_t_quantile");
  if (p == 0.5) return 0.0;
  const double tail = p > 0.5 ? 1.0 - p : p;

  // Bracket the root of t_upper_tail(t) = tail on t >= 0, then Newton.
  double lo = 0.0;
  double hi = 1.0;
  while (t_upper_tail(hi, df) > tail) {
    lo = hi;
    hi *= 2.0;
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = t_upper_tail(t, df) - tail;
    if (f == 0.0) break;
    if (f > 0.0) lo = t; else hi = t;
    double next = t + f / t_density(t, df);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool converged = std::abs(next - t) <= 1e-15 * std::max(1.0, t);
    t = next;
    if (converged || hi - lo <= 1e-15 * hi) break;
  }
  return p > 0.5 ? t : -t;
}

double fisher_f_cdf(double x, double df1, double df2) {
  check_df(df1, "fisher_f_cdf");
  check_df(df2, "fisher_f_cdf");
  if (x <= 0.0) return 0.0;
  return incomplete_beta(0.5 * df1, 0.5 * df2, df1 * x / (df1 * x + df2));
}

double fisher_f_quantile(double p, double df1, double df2) {
  check_df(df1, "fisher_f_quantile");
  check_df(df2, "fisher_f_quantile");
  check_probability(p, "fisher_f_quantile");
  if (p > 0.5) {
    // Work on the complementary variable to keep precision in the upper tail.
    const double z = inverse_incomplete_beta(0.5 * df2, 0.5 * df1, 1.0 - p);
    return df2 * (1.0 - z) / (df1 * z);
  }
  const double y = inverse_incomplete_beta(0.5 * df1, 0.5 * df2, p);
  return df2 * y / (df1 * (1.0 - y));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  check_probability(p, "normal_quantile");
  // Acklam's rational approximation followed by one Halley refinement.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace crossdock::stats
