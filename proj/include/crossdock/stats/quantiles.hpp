#pragma once

namespace crossdock::stats {

/// Regularized incomplete beta I_x(a, b), evaluated with Lentz's continued
/// fraction. Accurate to ~1e-14 relative for the parameter ranges used here.
double incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);

double fisher_f_cdf(double x, double df1, double df2);
double fisher_f_quantile(double p, double df1, double df2);

double normal_cdf(double z);
double normal_quantile(double p);

}  // namespace crossdock::stats
