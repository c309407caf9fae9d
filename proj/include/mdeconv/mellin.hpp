#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace mdeconv {

// Tabulated Mellin transform values on a symmetric grid of the imaginary
// coordinate p (the transform is taken on the vertical line re = 1).
struct MellinGrid {
  std::vector<double> p_values;                  // ascending, symmetric about 0
  std::vector<std::complex<double>> values;      // transform at each p

  void validate() const;  // throws std::invalid_argument on malformed grids
};

// Numeric Mellin transform M[f](1 + ip) = int x^{ip} f(x) dx over (lo, hi)
// with absolute tolerance `abs_tol`. Integrates in the log variable, where
// the oscillation rate is constant; lo == 0 is handled by extending the
// lower tail until its contribution is negligible.
std::complex<double> mellin_numeric(const std::function<double(double)>& density,
                                    double p, double lo, double hi,
                                    double abs_tol = 1e-10);

struct InversionResult {
  double value = 0.0;
  double imag_residual = 0.0;  // |imaginary part| discarded from the quadrature
};

// Inversion on the line re = 1: f(x) = (1/2pi) int x^{-1-ip} M(p) dp by the
// trapezoid rule over the tabulated grid. Throws std::domain_error for x <= 0.
InversionResult mellin_invert(const MellinGrid& grid, double x);

// Tabulates a transform function on the uniform symmetric grid [-p_max, p_max].
MellinGrid tabulate_mellin(const std::function<std::complex<double>(double)>& transform,
                           double p_max, double step);

}  // namespace mdeconv
