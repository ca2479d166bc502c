#include "skintone/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skintone::stats {

namespace {

constexpr int kMaxIterations = 200000;
constexpr double kEpsilon = 1e-15;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a,b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw std::runtime_error("regularized_incomplete_beta: continued fraction did not converge");
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

void require_df(double df) {
  if (!(df > 0.0)) throw std::domain_error("Student t: degrees of freedom must be positive");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("regularized_incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("regularized_incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_pdf(double t, double df) {
  require_df(df);
  const double log_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) - 0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(t * t / df));
}

double student_t_sf(double t, double df) {
  require_df(df);
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  // P(T > |t|) = 0.5 * I_{df/(df+t^2)}(df/2, 1/2); the beta routine's own
  // symmetry switch keeps this accurate near t = 0.
  double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
  tail = std::clamp(tail, 0.0, 0.5);
  return t > 0 ? tail : 1.0 - tail;
}

double student_t_quantile(double upper_tail, double df) {
  require_df(df);
  if (!(upper_tail > 0.0 && upper_tail < 1.0)) throw std::domain_error("student_t_quantile: probability outside (0, 1)");
  if (upper_tail == 0.5) return 0.0;

  double lo = -1.0;
  double hi = 1.0;
  while (student_t_sf(lo, df) < upper_tail) lo *= 2.0;
  while (student_t_sf(hi, df) > upper_tail) hi *= 2.0;

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = student_t_sf(t, df) - upper_tail;
    if (f > 0) lo = t; else hi = t;
    // sf is decreasing, so its derivative is -pdf.
    const double pdf = student_t_pdf(t, df);
    double next = pdf > 0 ? t + f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) < 1e-10 * std::max(1.0, std::fabs(t)) || hi - lo < 1e-12) return next;
    t = next;
  }
  return t;
}

CorrelationResult correlation_from_r(double r, std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("correlation requires n >= 3");
  CorrelationResult out;
  out.r = std::clamp(r, -1.0, 1.0);
  out.n = n;
  out.df = n - 2;
  const double df = static_cast<double>(out.df);
  const double one_minus = 1.0 - out.r * out.r;
  if (one_minus <= 0.0) {
    out.p_two_sided = 0.0;
    out.p_underflow = true;
    return out;
  }
  const double t = std::fabs(out.r) * std::sqrt(df / one_minus);
  out.p_two_sided = std::clamp(2.0 * student_t_sf(t, df), 0.0, 1.0);
  out.p_underflow = out.p_two_sided == 0.0;
  return out;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("pearson: need at least 3 observations");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson: zero variance");
  return correlation_from_r(sxy / std::sqrt(sxx * syy), n);
}

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("ols_fit: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("ols_fit: need at least 3 observations");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("ols_fit: x is constant");

  RegressionFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - fit.predict(x[i]);
    sse += resid * resid;
  }
  fit.residual_se = std::sqrt(sse / static_cast<double>(n - 2));
  return fit;
}

std::pair<double, double> confidence_band(const RegressionFit& fit, std::span<const double> x, double at,
                                          double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence_band: level outside (0, 1)");
  if (fit.n < 3 || x.size() != fit.n) throw std::invalid_argument("confidence_band: x must hold the fit's n >= 3 points");
  double mx = 0.0;
  for (double v : x) mx += v;
  mx /= static_cast<double>(x.size());
  double sxx = 0.0;
  for (double v : x) sxx += (v - mx) * (v - mx);
  if (sxx == 0.0) throw std::domain_error("confidence_band: degenerate Sxx");

  const double df = static_cast<double>(fit.n - 2);
  const double tcrit = student_t_quantile((1.0 - level) / 2.0, df);
  const double half =
      tcrit * fit.residual_se * std::sqrt(1.0 / static_cast<double>(fit.n) + (at - mx) * (at - mx) / sxx);
  const double center = fit.predict(at);
  return {center - half, center + half};
}

}  // namespace skintone::stats
