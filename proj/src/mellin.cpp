#include "mdeconv/mellin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mdeconv/quadrature.hpp"

namespace mdeconv {

namespace {

using cdouble = std::complex<double>;

}  // namespace

void MellinGrid::validate() const {
  if (p_values.size() != values.size())
    throw std::invalid_argument("MellinGrid: p_values and values differ in length");
  if (p_values.size() < 2)
    throw std::invalid_argument("MellinGrid: need at least two grid points");
  for (std::size_t i = 1; i < p_values.size(); ++i)
    if (!(p_values[i] > p_values[i - 1]))
      throw std::invalid_argument("MellinGrid: p_values must be strictly ascending");
  const double lo = p_values.front();
  const double hi = p_values.back();
  if (std::abs(lo + hi) > 1e-9 * std::max(1.0, std::abs(hi)))
    throw std::invalid_argument("MellinGrid: grid must be symmetric about 0");
}

std::complex<double> mellin_numeric(const std::function<double(double)>& density,
                                    double p, double lo, double hi, double abs_tol) {
  if (!(hi > lo) || lo < 0.0)
    throw std::invalid_argument("mellin_numeric: need 0 <= lo < hi");
  // In t = ln x the integrand is e^{(1+ip)t} f(e^t): constant oscillation
  // rate p, geometric damping toward t -> -inf.
  const auto integrand = [&density, p](double t) -> cdouble {
    const double x = std::exp(t);
    const double w = x * density(x);
    return {w * std::cos(p * t), w * std::sin(p * t)};
  };
  const double t_hi = std::log(hi);
  cdouble total{0.0, 0.0};
  if (lo > 0.0) {
    total = integrate_adaptive(integrand, std::log(lo), t_hi, abs_tol).value;
  } else {
    // Peel blocks of width 5 downward until two consecutive blocks are
    // negligible against the tolerance.
    double upper = t_hi;
    int quiet_blocks = 0;
    const double block = 5.0;
    const double floor_t = t_hi - 90.0;
    while (upper > floor_t && quiet_blocks < 2) {
      const double lower = upper - block;
      const cdouble piece = integrate_adaptive(integrand, lower, upper, 0.25 * abs_tol).value;
      total += piece;
      quiet_blocks = std::abs(piece) < 0.05 * abs_tol ? quiet_blocks + 1 : 0;
      upper = lower;
    }
  }
  return total;
}

InversionResult mellin_invert(const MellinGrid& grid, double x) {
  if (!(x > 0.0)) throw std::domain_error("mellin_invert: x must be > 0");
  grid.validate();
  const double lx = std::log(x);
  cdouble sum{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < grid.p_values.size(); ++i) {
    const double h = grid.p_values[i + 1] - grid.p_values[i];
    const cdouble phase_a{std::cos(grid.p_values[i] * lx), -std::sin(grid.p_values[i] * lx)};
    const cdouble phase_b{std::cos(grid.p_values[i + 1] * lx),
                          -std::sin(grid.p_values[i + 1] * lx)};
    sum += 0.5 * h * (phase_a * grid.values[i] + phase_b * grid.values[i + 1]);
  }
  const cdouble result = sum / (2.0 * std::numbers::pi * x);
  return {result.real(), std::abs(result.imag())};
}

MellinGrid tabulate_mellin(const std::function<std::complex<double>(double)>& transform,
                           double p_max, double step) {
  if (!(p_max > 0.0) || !(step > 0.0))
    throw std::invalid_argument("tabulate_mellin: p_max and step must be positive");
  const auto n = static_cast<std::ptrdiff_t>(std::ceil(p_max / step));
  MellinGrid grid;
  grid.p_values.reserve(static_cast<std::size_t>(2 * n + 1));
  grid.values.reserve(static_cast<std::size_t>(2 * n + 1));
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double p = step * static_cast<double>(k);
    grid.p_values.push_back(p);
    grid.values.push_back(transform(p));
  }
  return grid;
}

}  // namespace mdeconv
