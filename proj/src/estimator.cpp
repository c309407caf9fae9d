#include "mdeconv/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mdeconv/stats.hpp"

namespace mdeconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
// Divisor magnitudes below this are treated as exact zeros of the error
// transform: the inversion integrand is unbounded there.
constexpr double kSingularFloor = 1e-13;

void check_x_grid(const std::vector<double>& x_grid) {
  if (x_grid.empty()) {
    throw std::invalid_argument("estimate_density: x_grid must be nonempty");
  }
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0) || !std::isfinite(x_grid[i])) {
      throw std::domain_error("estimate_density: x_grid entry at index " + std::to_string(i) +
                              " must be a finite positive number");
    }
  }
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("EstimatorConfig: bandwidth must be positive");
  }
  if (!(smoothness_s > 0.0)) {
    throw std::invalid_argument("EstimatorConfig: smoothness_s must be positive");
  }
  if (!(quad_p_max > 0.0) || !(quad_step > 0.0)) {
    throw std::invalid_argument("EstimatorConfig: quadrature window and step must be positive");
  }
  if (quad_p_max * bandwidth < 8.0) {
    throw std::invalid_argument(
        "EstimatorConfig: quad_p_max * bandwidth must be >= 8 so the kernel window is "
        "resolved to its Gaussian tail");
  }
  if (holder_radius && !(*holder_radius > 0.0)) {
    throw std::invalid_argument("EstimatorConfig: holder_radius must be positive when set");
  }
  if (holder_bound && !(*holder_bound > 0.0)) {
    throw std::invalid_argument("EstimatorConfig: holder_bound must be positive when set");
  }
}

double default_bandwidth(std::size_t n, double kappa, double s) {
  if (n == 0) throw std::invalid_argument("default_bandwidth: n must be >= 1");
  if (kappa < 0.0) throw std::invalid_argument("default_bandwidth: kappa must be >= 0");
  if (!(s > 0.0)) throw std::invalid_argument("default_bandwidth: s must be positive");
  return std::pow(static_cast<double>(n), -1.0 / (1.0 + 2.0 * kappa + 2.0 * s));
}

EstimatorConfig default_config(const ObservationSeries& series,
                               const std::vector<double>& x_grid, double kappa, double s) {
  if (series.size() == 0) {
    throw std::domain_error("default_config: series must be nonempty");
  }
  check_x_grid(x_grid);
  EstimatorConfig config;
  config.smoothness_s = s;
  config.bandwidth = default_bandwidth(series.size(), kappa, s);
  config.quad_p_max = 10.0 / config.bandwidth;

  const auto [lo_log, hi_log] =
      std::minmax_element(series.log_values().begin(), series.log_values().end());
  double span = 1.0;
  for (double x : x_grid) {
    const double t = std::log(x);
    span = std::max(span, std::abs(t - *lo_log));
    span = std::max(span, std::abs(t - *hi_log));
  }
  // At least eight quadrature points per oscillation of exp(i p (ln x - ln Y)).
  config.quad_step = std::min(0.05, std::numbers::pi / (4.0 * span));
  return config;
}

std::complex<double> empirical_mellin(const ObservationSeries& series, double p) {
  if (series.size() == 0) {
    throw std::domain_error("empirical_mellin: series must be nonempty");
  }
  double re = 0.0;
  double im = 0.0;
  for (double l : series.log_values()) {
    re += std::cos(p * l);
    im += std::sin(p * l);
  }
  const double n = static_cast<double>(series.size());
  return {re / n, im / n};
}

DensityEstimate estimate_density_with_transform(
    const ObservationSeries& series,
    const std::function<std::complex<double>(double)>& error_transform, const Kernel& kernel,
    const EstimatorConfig& config, const std::vector<double>& x_grid) {
  config.validate();
  if (series.size() == 0) {
    throw std::domain_error("estimate_density: series must be nonempty");
  }
  check_x_grid(x_grid);

  const double h = config.quad_step;
  const double b = config.bandwidth;
  const auto half_points = static_cast<std::size_t>(std::ceil(config.quad_p_max / h));

  // Empirical Mellin transform on the nonnegative half-grid p_k = k h; the
  // negative half is its conjugate. Each observation contributes a
  // geometric sequence of unit phasors, advanced by one complex multiply
  // per node and re-anchored periodically to cap rounding drift.
  std::vector<std::complex<double>> psi(half_points + 1, std::complex<double>(0.0, 0.0));
  for (double l : series.log_values()) {
    const std::complex<double> rot = std::polar(1.0, h * l);
    std::complex<double> cur(1.0, 0.0);
    for (std::size_t k = 0; k <= half_points; ++k) {
      psi[k] += cur;
      cur *= rot;
      if ((k & 255u) == 255u) cur = std::polar(1.0, h * l * static_cast<double>(k + 1));
    }
  }
  const double inv_n = 1.0 / static_cast<double>(series.size());

  // Kernel-windowed, divisor-corrected coefficients on the half-grid.
  std::vector<std::complex<double>> coeff(half_points + 1);
  for (std::size_t k = 0; k <= half_points; ++k) {
    const double p = h * static_cast<double>(k);
    const std::complex<double> g = error_transform(p);
    if (std::abs(g) < kSingularFloor) {
      throw SingularDivisorError(p, std::abs(g));
    }
    coeff[k] = kernel.ft(p * b) / g * (psi[k] * inv_n);
  }

  DensityEstimate out;
  out.x_grid = x_grid;
  out.values.reserve(x_grid.size());
  out.bandwidth = b;
  out.n = series.size();

  const auto total = static_cast<std::ptrdiff_t>(half_points);
  for (double x : x_grid) {
    const double t = std::log(x);
    // Full two-sided trapezoid sweep. The imaginary part cancels only up
    // to rounding, which makes it a genuine accuracy diagnostic.
    const std::complex<double> rot = std::polar(1.0, -h * t);
    std::complex<double> cur = std::polar(1.0, h * t * static_cast<double>(total));
    std::complex<double> sum(0.0, 0.0);
    std::size_t steps = 0;
    for (std::ptrdiff_t k = -total; k <= total; ++k) {
      const std::size_t idx = static_cast<std::size_t>(k < 0 ? -k : k);
      const std::complex<double> c = (k < 0) ? std::conj(coeff[idx]) : coeff[idx];
      const double w = (k == -total || k == total) ? 0.5 : 1.0;
      sum += w * c * cur;
      cur *= rot;
      if ((++steps & 255u) == 0u) {
        cur = std::polar(1.0, -h * t * static_cast<double>(k + 1));
      }
    }
    sum *= h / (kTwoPi * x);
    out.values.push_back(sum.real());
    out.imag_residual = std::max(out.imag_residual, std::abs(sum.imag()));
  }

  if (config.clamp_nonnegative) {
    for (double& v : out.values) v = std::max(v, 0.0);
  }
  return out;
}

DensityEstimate estimate_density(const ObservationSeries& series, const ErrorDensity& error,
                                 const Kernel& kernel, const EstimatorConfig& config,
                                 const std::vector<double>& x_grid) {
  return estimate_density_with_transform(
      series, [&error](double p) { return mellin_error(error, p); }, kernel, config, x_grid);
}

namespace {

std::complex<double> weight_complex(const ErrorDensity& error, const Kernel& kernel,
                                    double bandwidth, double u, double q_max, double q_step) {
  const double step = (q_step > 0.0)
                          ? q_step
                          : std::min({0.05, bandwidth / 10.0,
                                      std::numbers::pi / (4.0 * std::max(1.0, std::abs(u)))});
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(q_max / step));
  std::complex<double> sum(0.0, 0.0);
  for (std::ptrdiff_t k = -half; k <= half; ++k) {
    const double q = step * static_cast<double>(k);
    const std::complex<double> g = mellin_error(error, q / bandwidth);
    if (std::abs(g) < kSingularFloor) {
      throw SingularDivisorError(q / bandwidth, std::abs(g));
    }
    const double w = (k == -half || k == half) ? 0.5 : 1.0;
    sum += w * std::polar(1.0, -q * u) * (kernel.ft(q) / g);
  }
  return sum * (step / kTwoPi);
}

}  // namespace

WeightValue weight_function(const ErrorDensity& error, const Kernel& kernel, double bandwidth,
                            double u, double q_max, double q_step) {
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("weight_function: bandwidth must be positive");
  }
  if (!(q_max >= 8.0)) {
    throw std::invalid_argument("weight_function: q_max must be >= 8");
  }
  const std::complex<double> w = weight_complex(error, kernel, bandwidth, u, q_max, q_step);
  return {w.real(), std::abs(w.imag())};
}

DensityEstimate estimate_density_via_weights(const ObservationSeries& series,
                                             const ErrorDensity& error, const Kernel& kernel,
                                             const EstimatorConfig& config,
                                             const std::vector<double>& x_grid) {
  config.validate();
  if (series.size() == 0) {
    throw std::domain_error("estimate_density_via_weights: series must be nonempty");
  }
  check_x_grid(x_grid);

  const double b = config.bandwidth;
  const double q_max = std::max(8.0, config.quad_p_max * b);
  DensityEstimate out;
  out.x_grid = x_grid;
  out.bandwidth = b;
  out.n = series.size();
  for (double x : x_grid) {
    const double t = std::log(x);
    std::complex<double> sum(0.0, 0.0);
    for (double l : series.log_values()) {
      sum += weight_complex(error, kernel, b, (t - l) / b, q_max, 0.0);
    }
    sum /= static_cast<double>(series.size()) * x * b;
    out.values.push_back(config.clamp_nonnegative ? std::max(sum.real(), 0.0) : sum.real());
    out.imag_residual = std::max(out.imag_residual, std::abs(sum.imag()));
  }
  return out;
}

VarianceBounds variance_bounds(const ErrorDensity& error, const Kernel& kernel, double f_y_at_x,
                               double x) {
  if (!(x > 0.0)) throw std::domain_error("variance_bounds: x must be positive");
  if (f_y_at_x < 0.0) {
    throw std::domain_error("variance_bounds: plug-in density value must be >= 0");
  }
  const double i2 = verify_ft_integrability(kernel, error.kappa()).second;
  const auto [c_low, c_high] = decay_constants(error, 1000.0);
  const double base = f_y_at_x / (kTwoPi * x) * i2;
  return {base / (c_low * c_low), base / (c_high * c_high)};
}

std::vector<ConfidenceInterval> confidence_intervals(const DensityEstimate& estimate,
                                                     const std::vector<VarianceBounds>& bounds,
                                                     double level, double kappa) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence_intervals: level must lie in (0, 1)");
  }
  if (kappa < 0.0) throw std::invalid_argument("confidence_intervals: kappa must be >= 0");
  if (bounds.size() != estimate.x_grid.size()) {
    throw std::invalid_argument("confidence_intervals: bounds size must match the x grid");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double scale =
      std::sqrt(static_cast<double>(estimate.n)) * std::pow(estimate.bandwidth, 0.5 + kappa);
  std::vector<ConfidenceInterval> out;
  out.reserve(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double hw = z * std::sqrt(bounds[i].sigma1_sq) / scale;
    out.push_back({estimate.values[i] - hw, estimate.values[i] + hw});
  }
  return out;
}

double estimate_f_y_log_kde(const ObservationSeries& series, double x, double bandwidth) {
  if (series.size() == 0) {
    throw std::domain_error("estimate_f_y_log_kde: series must be nonempty");
  }
  if (!(x > 0.0)) throw std::domain_error("estimate_f_y_log_kde: x must be positive");
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("estimate_f_y_log_kde: bandwidth must be positive");
  }
  const double t = std::log(x);
  double sum = 0.0;
  for (double l : series.log_values()) {
    const double z = (t - l) / bandwidth;
    sum += kInvSqrt2Pi * std::exp(-0.5 * z * z);
  }
  return sum / (static_cast<double>(series.size()) * x * bandwidth);
}

}  // namespace mdeconv
