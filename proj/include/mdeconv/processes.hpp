#pragma once

#include <cstdint>
#include <utility>

#include "mdeconv/error_density.hpp"
#include "mdeconv/observation_series.hpp"

namespace mdeconv {

// Square-root diffusion dX = (theta1 - theta2 X) dt + theta3 sqrt(X) dW,
// sampled at a fixed step. Requires 2 theta1 > theta3^2 so the process
// stays strictly positive; its invariant law is then
// gamma(2 theta1 / theta3^2, rate 2 theta2 / theta3^2).
struct CirParams {
  double theta1 = 1.0;
  double theta2 = 0.5;
  double theta3 = 1.0;
  double delta = 1.0;

  void validate() const;
};

// (shape, rate) of the invariant gamma law.
std::pair<double, double> gamma_invariant_params(const CirParams& params);

// Exact transition sampling: the conditional law is a scaled noncentral
// chi-squared, drawn through its gamma-Poisson mixture representation.
// The chain starts in the invariant law, so the path is stationary.
ObservationSeries simulate_cir(const CirParams& params, std::size_t n, std::uint64_t seed);

// Euler-Maruyama reference scheme with full truncation at zero; kept as a
// cross-check for the exact sampler, not for production use.
ObservationSeries simulate_cir_euler(const CirParams& params, std::size_t n, std::uint64_t seed,
                                     int substeps = 16);

enum class MarginalFamily { kWeibull, kGamma };

// Strictly stationary m-dependent sequence with an exact target marginal:
// every step draws a fresh innovation, and the output is, with probability
// recycle_prob, a uniform pick from the previous m_dep innovations
// (fresh otherwise). Values more than m_dep steps apart share no
// innovations, so the sequence is exactly m_dep-dependent.
struct MDependentParams {
  int m_dep = 30;
  double shape = 2.0;
  double scale = 5.0;  // Weibull scale, or gamma scale (1/rate)
  double recycle_prob = 0.5;
  MarginalFamily marginal = MarginalFamily::kWeibull;

  void validate() const;
};

ObservationSeries simulate_m_dependent(const MDependentParams& params, std::size_t n,
                                       std::uint64_t seed);

// Multiplicative measurement noise: the error law plus an optional
// m-dependent recycling structure (m_dependence = 0 gives iid noise).
struct NoiseSpec {
  ErrorDensity law = ErrorDensity::uniform(0.0, 1.0);
  int m_dependence = 0;
  double recycle_prob = 0.5;

  void validate() const;
};

ObservationSeries simulate_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);

// Elementwise product Y_j = X_j * U_j. Series lengths must match.
ObservationSeries contaminate(const ObservationSeries& signal, const ObservationSeries& noise);

}  // namespace mdeconv
