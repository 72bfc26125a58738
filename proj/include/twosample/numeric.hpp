#pragma once

#include <cstddef>
#include <cstdint>

namespace twosample {

// Regularized lower incomplete gamma P(a, x) and upper Q(a, x) = 1 - P(a, x).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_beta(double a, double b, double x);

// Standard normal distribution function and its inverse.
double norm_cdf(double x);
double norm_quantile(double p);

// Student t distribution function with df degrees of freedom.
double t_cdf(double x, double df);

// Upper tail P(X >= k) for X ~ Binomial(n, p).
double binom_upper_tail(std::uint64_t n, double p, std::uint64_t k);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chisq_upper_tail(double df, double x);

// Asymptotic one-sample Kolmogorov-Smirnov p-value for statistic d at size n,
// with the small-sample correction to the limiting distribution argument.
double kolmogorov_p(double d, std::size_t n);

double log_choose(std::uint64_t n, std::uint64_t k);

// Exact binomial coefficient, saturating at limit instead of overflowing.
std::uint64_t choose_capped(std::uint64_t n, std::uint64_t k, std::uint64_t limit);

}  // namespace twosample
