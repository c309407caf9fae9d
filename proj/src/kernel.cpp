#include "mdeconv/kernel.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdeconv {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2 pi)

double binomial(int n, int k) {
  // Exact for the small inputs used here (n <= 11).
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<std::uint64_t>(n - i);
    den *= static_cast<std::uint64_t>(i + 1);
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double trapezoid_real(double (*f)(double, const Kernel&, int), const Kernel& kernel, int k,
                      double a, double b, std::size_t nodes) {
  const double h = (b - a) / static_cast<double>(nodes - 1);
  double sum = 0.5 * (f(a, kernel, k) + f(b, kernel, k));
  for (std::size_t i = 1; i + 1 < nodes; ++i) {
    sum += f(a + h * static_cast<double>(i), kernel, k);
  }
  return sum * h;
}

double moment_integrand(double x, const Kernel& kernel, int k) {
  double xe = 1.0;
  for (int i = 0; i < k; ++i) xe *= x;
  return xe * kernel.eval(x);
}

}  // namespace

double Kernel::eval(double x) const {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
    const double j = static_cast<double>(idx + 1);
    const double z = x / j;
    sum += weights_[idx] * kInvSqrt2Pi * std::exp(-0.5 * z * z);
  }
  return sum;
}

double Kernel::ft(double p) const {
  double sum = 0.0;
  for (std::size_t idx = 0; idx < ft_weights_.size(); ++idx) {
    const double j = static_cast<double>(idx + 1);
    sum += ft_weights_[idx] * std::exp(-0.5 * j * j * p * p);
  }
  return sum;
}

Kernel make_kernel(int order) {
  if (order < 1 || order > 10) {
    throw std::invalid_argument("make_kernel: order must be in [1, 10], got " +
                                std::to_string(order));
  }
  std::vector<double> weights;
  std::vector<double> ft_weights;
  weights.reserve(static_cast<std::size_t>(order) + 1);
  ft_weights.reserve(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order + 1; ++j) {
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    const double c = binomial(order + 1, j) * sign;
    ft_weights.push_back(c);
    weights.push_back(c / static_cast<double>(j));
  }
  return Kernel(order, std::move(weights), std::move(ft_weights));
}

MomentReport verify_moments(const Kernel& kernel, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("verify_moments: tol must be positive");
  }
  MomentReport report;
  report.tol = tol;
  report.pass = true;
  // Window [-40, 40] truncates only mass below ~1e-300; with ~1e5 nodes the
  // trapezoid rule is limited by rounding, not discretization, because the
  // integrand and all derivatives vanish at the window ends.
  constexpr std::size_t kNodes = 100001;
  for (int k = 0; k <= kernel.order(); ++k) {
    const double value = trapezoid_real(moment_integrand, kernel, k, -40.0, 40.0, kNodes);
    const double target = (k == 0) ? 1.0 : 0.0;
    const double residual = std::abs(value - target);
    report.residuals.push_back(residual);
    if (residual > tol && report.failing_moment < 0) {
      report.failing_moment = k;
      report.pass = false;
    }
  }
  return report;
}

std::pair<double, double> verify_ft_integrability(const Kernel& kernel, double kappa) {
  if (kappa < 0.0) {
    throw std::invalid_argument("verify_ft_integrability: kappa must be >= 0");
  }
  // Integrands |p|^{k kappa} |K^ft(p)|^k are even; integrate [0, 60] and
  // double. Step small enough that halving it moves the result < 1e-6.
  constexpr std::size_t kNodes = 120001;
  constexpr double kPMax = 60.0;
  const double h = kPMax / static_cast<double>(kNodes - 1);
  double i1 = 0.0;
  double i2 = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) {
    const double p = h * static_cast<double>(i);
    const double a = std::abs(kernel.ft(p));
    const double w = (i == 0 || i + 1 == kNodes) ? 0.5 : 1.0;
    i1 += w * std::pow(p, kappa) * a;
    i2 += w * std::pow(p, 2.0 * kappa) * a * a;
  }
  return {2.0 * h * i1, 2.0 * h * i2};
}

}  // namespace mdeconv
