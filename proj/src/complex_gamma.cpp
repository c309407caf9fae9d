#include "mdeconv/complex_gamma.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mdeconv {

namespace {

using cdouble = std::complex<double>;

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series for re(z) >= 0.5. Works in log form so that huge and tiny
// magnitudes stay representable.
cdouble log_gamma_lanczos(cdouble z) {
  z -= 1.0;
  cdouble a{kLanczosCoeff[0], 0.0};
  for (int i = 1; i < 9; ++i) a += kLanczosCoeff[i] / (z + static_cast<double>(i));
  const cdouble t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(a);
}

// log(sin(pi z)) for im(z) >= 0 without overflowing the exponentials.
cdouble log_sin_pi(cdouble z) {
  const cdouble ipz = cdouble{0.0, 1.0} * std::numbers::pi * z;
  // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2 i); |e^{2 i pi z}| <= 1 here.
  return -ipz + std::log(std::exp(2.0 * ipz) - 1.0) - std::log(cdouble{0.0, 2.0});
}

cdouble log_gamma_impl(cdouble z) {
  if (z.imag() < 0.0) return std::conj(log_gamma_impl(std::conj(z)));
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  // Reflection: Γ(z) Γ(1 - z) = pi / sin(pi z).
  return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_impl(1.0 - z);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("log_gamma: non-finite argument");
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::nearbyint(z.real())) {
    throw std::domain_error("log_gamma: pole at z = " +
                            std::to_string(static_cast<long long>(z.real())));
  }
  return log_gamma_impl(z);
}

std::complex<double> complex_gamma(std::complex<double> z) {
  return std::exp(log_gamma(z));
}

}  // namespace mdeconv
