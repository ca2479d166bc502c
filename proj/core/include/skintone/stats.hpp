#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace skintone::stats {

struct CorrelationResult {
  double r = 0.0;
  std::uint64_t df = 0;
  double p_two_sided = 1.0;
  std::uint64_t n = 0;
  // True when the p-value underflowed to zero (reported as "p < machine epsilon").
  bool p_underflow = false;
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_se = 0.0;
  std::uint64_t n = 0;

  double predict(double x) const noexcept { return intercept + slope * x; }
};

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction with
// the symmetry switch I_x(a,b) = 1 - I_{1-x}(b,a).
double regularized_incomplete_beta(double a, double b, double x);

// Student's t density and upper-tail probability P(T > t). Both accept
// fractional df; df must be positive (std::domain_error otherwise).
double student_t_pdf(double t, double df);
double student_t_sf(double t, double df);

// t such that student_t_sf(t, df) == upper_tail, by bisection refined with
// Newton steps to 1e-10.
double student_t_quantile(double upper_tail, double df);

// Product-moment correlation with a two-sided p-value from
// t = r * sqrt(df / (1 - r^2)), df = n - 2. Throws std::invalid_argument on
// length mismatch or n < 3 and std::domain_error on a constant series.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// p-value for a given r and sample size; shares pearson's tail computation.
CorrelationResult correlation_from_r(double r, std::uint64_t n);

// Closed-form least squares. residual_se uses an n - 2 denominator.
RegressionFit ols_fit(std::span<const double> x, std::span<const double> y);

// Mean-response band at `at`:
//   fit(at) +/- t_{(1+level)/2, n-2} * residual_se * sqrt(1/n + (at - mean(x))^2 / Sxx)
std::pair<double, double> confidence_band(const RegressionFit& fit, std::span<const double> x, double at,
                                          double level);

}  // namespace skintone::stats
