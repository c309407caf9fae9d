#include "mdeconv/error_density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mdeconv/complex_gamma.hpp"

namespace mdeconv {

namespace {

using cdouble = std::complex<double>;

// x^{1+ip} for x >= 0 (zero at x = 0 since re(1+ip) > 0).
cdouble power_1ip(double x, double p) {
  if (x == 0.0) return {0.0, 0.0};
  const double lx = std::log(x);
  return x * cdouble{std::cos(p * lx), std::sin(p * lx)};
}

}  // namespace

ErrorDensity ErrorDensity::uniform(double a, double b) {
  if (!(a >= 0.0) || !(a < b))
    throw std::invalid_argument("ErrorDensity::uniform requires 0 <= a < b");
  return ErrorDensity(ErrorFamily::kUniform, a, b, 1.0);
}

ErrorDensity ErrorDensity::beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("ErrorDensity::beta requires alpha > 0, beta > 0");
  return ErrorDensity(ErrorFamily::kBeta, alpha, beta, beta);
}

ErrorDensity ErrorDensity::degenerate() {
  return ErrorDensity(ErrorFamily::kDegenerate, 1.0, 0.0, 0.0);
}

std::string ErrorDensity::name() const {
  char buf[96];
  switch (family_) {
    case ErrorFamily::kUniform:
      std::snprintf(buf, sizeof(buf), "uniform(%g, %g)", p1_, p2_);
      return buf;
    case ErrorFamily::kBeta:
      std::snprintf(buf, sizeof(buf), "beta(%g, %g)", p1_, p2_);
      return buf;
    case ErrorFamily::kDegenerate:
      return "degenerate(1)";
  }
  return "unknown";
}

double ErrorDensity::density(double x) const {
  if (!(x > 0.0)) return 0.0;
  switch (family_) {
    case ErrorFamily::kUniform:
      return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
    case ErrorFamily::kBeta: {
      if (x > 1.0) return 0.0;
      const double log_b = std::lgamma(p1_) + std::lgamma(p2_) - std::lgamma(p1_ + p2_);
      if (x == 1.0) {
        // Right-endpoint limit; the generic formula would form 0 * log(0)
        // when beta == 1. Keeping the limit value keeps quadrature against
        // this density free of an artificial endpoint jump.
        if (p2_ == 1.0) return std::exp(-log_b);
        return p2_ > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
      }
      return std::exp((p1_ - 1.0) * std::log(x) + (p2_ - 1.0) * std::log1p(-x) - log_b);
    }
    case ErrorFamily::kDegenerate:
      throw std::domain_error("degenerate error law has no density function");
  }
  return 0.0;
}

std::complex<double> mellin_error(const ErrorDensity& g, double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("mellin_error: non-finite p");
  switch (g.family()) {
    case ErrorFamily::kUniform: {
      const double a = g.param1();
      const double b = g.param2();
      const cdouble one_ip{1.0, p};
      return (power_1ip(b, p) - power_1ip(a, p)) / ((b - a) * one_ip);
    }
    case ErrorFamily::kBeta: {
      const double alpha = g.param1();
      const double beta = g.param2();
      // Γ(α+ip) Γ(α+β) / (Γ(α) Γ(α+β+ip)), evaluated through log-gamma
      // differences so large |p| does not underflow.
      const cdouble lg = log_gamma(cdouble{alpha, p}) + log_gamma(cdouble{alpha + beta, 0.0}) -
                         log_gamma(cdouble{alpha, 0.0}) -
                         log_gamma(cdouble{alpha + beta, p});
      return std::exp(lg);
    }
    case ErrorFamily::kDegenerate:
      return {1.0, 0.0};
  }
  return {0.0, 0.0};
}

SmoothnessReport verify_ordinary_smooth(const ErrorDensity& g, double p_max,
                                        int n_samples, double kappa_override) {
  if (!(p_max >= 10.0))
    throw std::invalid_argument("verify_ordinary_smooth: p_max must be >= 10");
  if (n_samples < 16)
    throw std::invalid_argument("verify_ordinary_smooth: need at least 16 samples");
  const double kappa = kappa_override >= 0.0 ? kappa_override : g.kappa();
  const double fd_step = 1e-4;

  std::vector<double> ps(static_cast<std::size_t>(n_samples));
  std::vector<double> scaled(ps.size());
  SmoothnessReport report;
  report.c_low = std::numeric_limits<double>::infinity();
  report.c_high = 0.0;
  report.d_deriv = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double p = p_max * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    const double weight = std::pow(1.0 + std::abs(p), kappa);
    const double modulus = std::abs(mellin_error(g, p)) * weight;
    const cdouble deriv =
        (mellin_error(g, p + fd_step) - mellin_error(g, p - fd_step)) / (2.0 * fd_step);
    ps[i] = p;
    scaled[i] = modulus;
    report.c_low = std::min(report.c_low, modulus);
    report.c_high = std::max(report.c_high, modulus);
    report.d_deriv = std::max(report.d_deriv, std::abs(deriv) * weight);
  }

  // Least-squares slope of log(scaled) against log(1+p) over the tail half.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] < 0.5 * p_max || scaled[i] <= 0.0) continue;
    const double lx = std::log1p(ps[i]);
    const double ly = std::log(scaled[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count >= 2) {
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    report.tail_slope = denom != 0.0 ? (static_cast<double>(count) * sxy - sx * sy) / denom : 0.0;
  }
  report.pass = report.c_low > 0.0 && std::abs(report.tail_slope) <= 0.25;
  return report;
}

std::pair<double, double> decay_constants(const ErrorDensity& g, double u_max) {
  if (!(u_max >= 100.0))
    throw std::invalid_argument("decay_constants: u_max must be >= 100");
  const double kappa = g.kappa();
  const std::size_t n = 4001;
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p =
        0.5 * u_max + 0.5 * u_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const double product = std::abs(mellin_error(g, p)) * std::pow(p, kappa);
    c1 = std::min(c1, product);
    c2 = std::max(c2, product);
  }
  return {c1, c2};
}

}  // namespace mdeconv
