#ifndef MEASUREVAL_DISTRIBUTIONS_HPP
#define MEASUREVAL_DISTRIBUTIONS_HPP

namespace measureval::dist {

/// Natural log of the gamma function for x > 0 (Lanczos approximation).
double ln_gamma(double x);

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with df >= 1 degrees of freedom.
double student_t_cdf(double t, int df);

/// Inverse of student_t_cdf; p must lie strictly inside (0, 1).
double student_t_quantile(double p, int df);

/// CDF of the F distribution with (df1, df2) degrees of freedom, x >= 0.
double f_cdf(double x, int df1, int df2);

/// Inverse of f_cdf; p must lie strictly inside (0, 1).
double f_quantile(double p, int df1, int df2);

/// Standard normal CDF.
double standard_normal_cdf(double z);

}  // namespace measureval::dist

#endif
