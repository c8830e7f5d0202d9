#pragma once

namespace logitkit {

/// Standard normal CDF, absolute error well under 1e-10 on |z| <= 8.
double normal_cdf(double z);

/// Standard normal quantile for p in (0,1). Rational initial guess polished
/// with one Halley step against normal_cdf.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x): series for x < a+1,
/// Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Q(a, x) = 1 - P(a, x), computed on the accurate branch.
double regularized_gamma_q(double a, double x);

/// Chi-square CDF with df degrees of freedom: P(df/2, x/2).
double chi_square_cdf(double x, int df);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double x, int df);

}  // namespace logitkit
