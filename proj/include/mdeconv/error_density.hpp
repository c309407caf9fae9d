#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>

namespace mdeconv {

enum class ErrorFamily { kUniform, kBeta, kDegenerate };

// Empirical envelope constants for the ordinary-smooth decay of the Mellin
// transform: c (1+|p|)^-kappa <= |g^mt(p)| <= C (1+|p|)^-kappa and
// |(g^mt)'(p)| <= D (1+|p|)^-kappa.
struct SmoothnessEnvelope {
  double c_low = 0.0;
  double c_high = 0.0;
  double d_deriv = 0.0;
};

struct SmoothnessReport {
  double c_low = 0.0;
  double c_high = 0.0;
  double d_deriv = 0.0;
  double tail_slope = 0.0;  // fitted log-log slope of the scaled modulus
  bool pass = false;
};

// Known error law of the multiplicative noise: evaluable density on (0, inf),
// closed-form Mellin transform, and an analytically assigned decay exponent
// kappa (uniform -> 1, beta(alpha, beta) -> beta). The degenerate law U == 1
// is a test fixture with g^mt == 1 and kappa = 0.
class ErrorDensity {
public:
  static ErrorDensity uniform(double a, double b);
  static ErrorDensity beta(double alpha, double beta);
  static ErrorDensity degenerate();

  ErrorFamily family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  double kappa() const { return kappa_; }
  std::string name() const;

  // Density at x > 0. The degenerate point mass has no density; throws.
  double density(double x) const;

  const std::optional<SmoothnessEnvelope>& envelope() const { return envelope_; }
  void set_envelope(SmoothnessEnvelope env) { envelope_ = env; }

private:
  ErrorDensity(ErrorFamily family, double p1, double p2, double kappa)
      : family_(family), p1_(p1), p2_(p2), kappa_(kappa) {}

  ErrorFamily family_;
  double p1_;
  double p2_;
  double kappa_;
  std::optional<SmoothnessEnvelope> envelope_;
};

// Closed-form Mellin transform g^mt(p) = M[g](1 + ip).
std::complex<double> mellin_error(const ErrorDensity& g, double p);

// Scans |g^mt(p)| (1+|p|)^kappa and the finite-difference derivative envelope
// on [0, p_max]. Pass requires the scaled modulus to stay away from zero and
// to be flat in the tail (wrong kappa shows up as a nonzero log-log slope).
// `kappa_override` replaces the analytic exponent when >= 0.
SmoothnessReport verify_ordinary_smooth(const ErrorDensity& g, double p_max,
                                        int n_samples,
                                        double kappa_override = -1.0);

// Empirical inf/sup of |g^mt(p)| |p|^kappa over |p| in [u_max/2, u_max];
// approximates the constants bounding the asymptotic variance.
std::pair<double, double> decay_constants(const ErrorDensity& g, double u_max);

}  // namespace mdeconv
