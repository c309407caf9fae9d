#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace mdeconv {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;  // accumulated local error bounds
};

// Adaptive Simpson quadrature for complex-valued integrands on [a, b].
// Throws mdeconv::AccuracyError (std::runtime_error) carrying the residual
// when the refinement does not reach `abs_tol` within the depth limit.
QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 48);

double integrate_adaptive_real(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, int max_depth = 48);

// Composite trapezoid rule on a uniform grid with `n` panels.
double trapezoid_uniform(const std::function<double(double)>& f, double a, double b,
                         std::size_t n);

class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

}  // namespace mdeconv
