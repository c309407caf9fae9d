#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdeconv/error_density.hpp"
#include "mdeconv/kernel.hpp"
#include "mdeconv/observation_series.hpp"

namespace mdeconv {

// Thrown when the Mellin transform of the error density drops below the
// numerical floor inside the quadrature window, which would make the
// divisor in the inversion integrand blow up.
class SingularDivisorError : public std::runtime_error {
public:
  SingularDivisorError(double p, double magnitude)
      : std::runtime_error("error-density Mellin transform is numerically zero at p = " +
                           std::to_string(p) + " (|value| = " + std::to_string(magnitude) + ")"),
        p_(p),
        magnitude_(magnitude) {}
  double p() const { return p_; }
  double magnitude() const { return magnitude_; }

private:
  double p_;
  double magnitude_;
};

struct EstimatorConfig {
  double bandwidth = 0.0;       // b > 0
  double smoothness_s = 2.0;    // assumed smoothness driving the bandwidth rule
  double quad_p_max = 0.0;      // truncation of the inversion integral
  double quad_step = 0.0;       // uniform step of the inversion grid
  bool clamp_nonnegative = false;

  // Optional regularity metadata carried through to reports; not used in
  // the computation itself.
  std::optional<double> holder_radius = std::nullopt;
  std::optional<double> holder_bound = std::nullopt;

  void validate() const;
};

// Bandwidth rule b_n = n^{-1/(1 + 2 kappa + 2 s)}.
double default_bandwidth(std::size_t n, double kappa, double s);

// Fills bandwidth (by the default rule), the quadrature window
// (quad_p_max = 10 / b, so the kernel factor is ~e^{-50} at the ends) and a
// step fine enough for the oscillation range spanned by the data and grid.
EstimatorConfig default_config(const ObservationSeries& series,
                               const std::vector<double>& x_grid, double kappa,
                               double s = 2.0);

// (1/n) sum_j exp(i p ln Y_j): the empirical Mellin transform of the data
// on the line Re(z) = 1 (normalized form). Throws on an empty series.
std::complex<double> empirical_mellin(const ObservationSeries& series, double p);

struct DensityEstimate {
  std::vector<double> x_grid;
  std::vector<double> values;
  double bandwidth = 0.0;
  std::size_t n = 0;
  double imag_residual = 0.0;  // max over grid of the discarded imaginary part
};

// Deconvolution estimate of the invariant density on x_grid, dividing the
// empirical Mellin transform by the transform of the given error density
// and inverting against the order-m kernel window.
DensityEstimate estimate_density(const ObservationSeries& series, const ErrorDensity& error,
                                 const Kernel& kernel, const EstimatorConfig& config,
                                 const std::vector<double>& x_grid);

// Same computation with a caller-supplied divisor transform; exists so the
// singular-divisor guard can be exercised and alternative error models
// plugged in without an ErrorDensity wrapper.
DensityEstimate estimate_density_with_transform(
    const ObservationSeries& series,
    const std::function<std::complex<double>(double)>& error_transform, const Kernel& kernel,
    const EstimatorConfig& config, const std::vector<double>& x_grid);

struct WeightValue {
  double value = 0.0;
  double imag_residual = 0.0;
};

// The deconvolution weight W_b(u) = (1/2 pi) int e^{-i q u} K^ft(q) /
// g^mt(q / b) dq. The estimator admits the kernel-style representation
// f_hat(x) = (1 / (n x b)) sum_j W_b((ln x - ln Y_j) / b).
WeightValue weight_function(const ErrorDensity& error, const Kernel& kernel, double bandwidth,
                            double u, double q_max = 8.0, double q_step = 0.0);

// Evaluates the estimator through the weight representation. Slower than
// estimate_density but numerically equivalent; used as a cross-check.
DensityEstimate estimate_density_via_weights(const ObservationSeries& series,
                                             const ErrorDensity& error, const Kernel& kernel,
                                             const EstimatorConfig& config,
                                             const std::vector<double>& x_grid);

struct VarianceBounds {
  double sigma1_sq = 0.0;  // upper envelope (small divisor constant)
  double sigma2_sq = 0.0;  // lower envelope (large divisor constant)
};

// Asymptotic variance envelope at x: f_Y(x) / (2 pi x C^2) * int |p|^{2
// kappa} |K^ft(p)|^2 dp with C the lower/upper decay constant of the error
// transform.
VarianceBounds variance_bounds(const ErrorDensity& error, const Kernel& kernel, double f_y_at_x,
                               double x);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Normal-approximation band f_hat(x) +- z_{(1+level)/2} sigma1 /
// (sqrt(n) b^{1/2 + kappa}), using the conservative (upper) envelope.
std::vector<ConfidenceInterval> confidence_intervals(const DensityEstimate& estimate,
                                                     const std::vector<VarianceBounds>& bounds,
                                                     double level, double kappa);

// Log-domain Gaussian kernel density estimate of the observation density
// f_Y at x; the plug-in used by the variance envelope.
double estimate_f_y_log_kde(const ObservationSeries& series, double x, double bandwidth);

}  // namespace mdeconv
