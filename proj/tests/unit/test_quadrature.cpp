#include <cmath>
#include <complex>
#include <doctest.h>

#include "mdeconv/quadrature.hpp"

using mdeconv::AccuracyError;
using mdeconv::integrate_adaptive;
using mdeconv::integrate_adaptive_real;
using mdeconv::trapezoid_uniform;
using cd = std::complex<double>;

TEST_SUITE("quadrature") {

TEST_CASE("integrates polynomials and trig exactly enough") {
  CHECK(std::abs(integrate_adaptive_real([](double x) { return x * x; }, 0.0, 1.0, 1e-12) -
                 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(integrate_adaptive_real([](double x) { return std::sin(x); }, 0.0,
                                         4.0 * std::atan(1.0), 1e-12) -
                 2.0) < 1e-11);
}

TEST_CASE("handles complex integrands and reports an error estimate") {
  const auto r = integrate_adaptive(
      [](double x) { return cd(std::cos(x), std::sin(x)); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(r.value.real() - std::sin(1.0)) < 1e-12);
  CHECK(std::abs(r.value.imag() - (1.0 - std::cos(1.0))) < 1e-12);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("resolves oscillatory integrands adaptively") {
  CHECK(std::abs(integrate_adaptive_real([](double x) { return std::cos(50.0 * x); }, 0.0,
                                         10.0, 1e-10) -
                 std::sin(500.0) / 50.0) < 1e-9);
}

TEST_CASE("endpoint derivative singularity converges") {
  CHECK(std::abs(integrate_adaptive_real([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                                         1e-10) -
                 2.0 / 3.0) < 1e-9);
}

TEST_CASE("reports failure when the depth budget is exhausted") {
  CHECK_THROWS_AS(integrate_adaptive_real([](double x) { return std::cos(50.0 * x); }, 0.0,
                                          10.0, 1e-12, 3),
                  AccuracyError);
  try {
    integrate_adaptive_real([](double x) { return std::cos(50.0 * x); }, 0.0, 10.0, 1e-12, 3);
    CHECK(false);
  } catch (const AccuracyError& e) {
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("uniform trapezoid is spectrally accurate for decayed smooth integrands") {
  const double got =
      trapezoid_uniform([](double x) { return std::exp(-0.5 * x * x); }, -40.0, 40.0, 20000);
  CHECK(std::abs(got - std::sqrt(8.0 * std::atan(1.0))) < 1e-13);
}

}  // TEST_SUITE
