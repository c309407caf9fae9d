#pragma once

#include <utility>
#include <vector>

namespace mdeconv {

// Bias-reducing kernel of order m: a signed mixture of m+1 Gaussians,
// K(x) = sum_j binom(m+1, j) (-1)^{j+1} (1/j) w(x/j) with w the standard
// normal density. Its Fourier transform is the matching mixture of
// e^{-j^2 p^2 / 2}, so moments 1..m vanish while the mass stays 1.
class Kernel {
public:
  int order() const { return order_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& ft_weights() const { return ft_weights_; }

  double eval(double x) const;
  double ft(double p) const;

private:
  friend Kernel make_kernel(int order);
  Kernel(int order, std::vector<double> weights, std::vector<double> ft_weights)
      : order_(order), weights_(std::move(weights)), ft_weights_(std::move(ft_weights)) {}

  int order_;
  std::vector<double> weights_;     // indexed j-1, j = 1..m+1
  std::vector<double> ft_weights_;
};

// Valid orders are 1..10. Throws std::invalid_argument otherwise.
Kernel make_kernel(int order);

struct MomentReport {
  std::vector<double> residuals;  // index k: |moment_k - (k == 0 ? 1 : 0)|, k = 0..m
  int failing_moment = -1;        // first k over tolerance, -1 when all pass
  double tol = 0.0;
  bool pass = false;
};

// Checks the normalization and the vanishing moments 1..m numerically
// (wide trapezoid window; the Gaussian tails are below 1e-300 outside).
MomentReport verify_moments(const Kernel& kernel, double tol);

// Numeric values of int |p|^{k kappa} |K^ft(p)|^k dp for k = 1, 2 on
// |p| <= 60; finite by the Gaussian decay of K^ft.
std::pair<double, double> verify_ft_integrability(const Kernel& kernel, double kappa);

}  // namespace mdeconv
