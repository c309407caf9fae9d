#include <cmath>
#include <complex>
#include <doctest.h>
#include <stdexcept>

#include "mdeconv/error_density.hpp"

using mdeconv::decay_constants;
using mdeconv::ErrorDensity;
using mdeconv::ErrorFamily;
using mdeconv::mellin_error;
using mdeconv::verify_ordinary_smooth;
using cd = std::complex<double>;

TEST_SUITE("error_density") {

TEST_CASE("closed-form transforms match frozen quadrature references") {
  // Values computed independently with arbitrary-precision quadrature.
  CHECK(std::abs(mellin_error(ErrorDensity::uniform(0.0, 1.0), 3.0) - cd(0.1, -0.3)) < 1e-12);
  CHECK(std::abs(mellin_error(ErrorDensity::uniform(0.5, 1.5), 2.7) -
                 cd(0.69054532897979631, -0.053683304359741402)) < 1e-12);
  CHECK(std::abs(mellin_error(ErrorDensity::beta(1.0, 2.0), 2.7) -
                 cd(-0.11304131350159893, -0.17308783352796811)) < 1e-12);
  CHECK(std::abs(mellin_error(ErrorDensity::beta(2.0, 1.0), 5.0) -
                 cd(0.13793103448275862, -0.34482758620689655)) < 1e-12);
  CHECK(std::abs(mellin_error(ErrorDensity::beta(2.0, 2.0), 5.0) -
                 cd(-0.11561866125760649, -0.15212981744421907)) < 1e-12);
}

TEST_CASE("transforms equal one at p = 0 and the degenerate law is flat") {
  for (const auto& law :
       {ErrorDensity::uniform(0.0, 1.0), ErrorDensity::uniform(0.5, 1.5),
        ErrorDensity::beta(1.0, 2.0), ErrorDensity::beta(2.0, 2.0)}) {
    CHECK(std::abs(mellin_error(law, 0.0) - cd(1.0, 0.0)) < 1e-14);
  }
  CHECK(std::abs(mellin_error(ErrorDensity::degenerate(), 7.3) - cd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("beta transform survives large frequencies via log-gamma") {
  // Naive gamma ratios underflow near p ~ 500; the log form must not.
  const cd v = mellin_error(ErrorDensity::beta(2.0, 2.0), 500.0);
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
  // |g^mt| ~ (alpha+beta-1)! p^{-beta} asymptotically; at p=500, order 2.4e-5.
  CHECK(std::abs(v) > 1e-6);
  CHECK(std::abs(v) < 1e-4);
}

TEST_CASE("analytic decay exponents") {
  CHECK(ErrorDensity::uniform(0.0, 1.0).kappa() == 1.0);
  CHECK(ErrorDensity::uniform(0.5, 1.5).kappa() == 1.0);
  CHECK(ErrorDensity::beta(1.0, 2.0).kappa() == 2.0);
  CHECK(ErrorDensity::beta(2.0, 1.0).kappa() == 1.0);
  CHECK(ErrorDensity::beta(2.0, 2.0).kappa() == 2.0);
  CHECK(ErrorDensity::degenerate().kappa() == 0.0);
}

TEST_CASE("densities evaluate correctly") {
  CHECK(ErrorDensity::uniform(0.0, 1.0).density(0.4) == doctest::Approx(1.0));
  CHECK(ErrorDensity::uniform(0.5, 1.5).density(2.0) == 0.0);
  // beta(2,2): 6 x (1-x)
  CHECK(ErrorDensity::beta(2.0, 2.0).density(0.3) == doctest::Approx(6.0 * 0.3 * 0.7));
  CHECK(ErrorDensity::beta(1.0, 2.0).density(0.25) == doctest::Approx(2.0 * 0.75));
  CHECK_THROWS_AS(ErrorDensity::degenerate().density(1.0), std::domain_error);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(ErrorDensity::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ErrorDensity::uniform(-0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ErrorDensity::beta(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ErrorDensity::beta(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("ordinary-smooth verification accepts correct exponents") {
  CHECK(verify_ordinary_smooth(ErrorDensity::uniform(0.0, 1.0), 200.0, 2000).pass);
  CHECK(verify_ordinary_smooth(ErrorDensity::beta(2.0, 1.0), 200.0, 2000).pass);
  CHECK(verify_ordinary_smooth(ErrorDensity::beta(2.0, 2.0), 200.0, 2000).pass);
}

TEST_CASE("ordinary-smooth verification flags an overstated exponent") {
  const auto report =
      verify_ordinary_smooth(ErrorDensity::uniform(0.0, 1.0), 200.0, 2000, 2.0);
  CHECK_FALSE(report.pass);
  // The scaled modulus grows ~ p under the wrong exponent: visible slope.
  CHECK(report.tail_slope > 0.5);
}

TEST_CASE("decay constants approach the analytic limits") {
  const auto [u_lo, u_hi] = decay_constants(ErrorDensity::uniform(0.0, 1.0), 1000.0);
  CHECK(u_lo == doctest::Approx(1.0).epsilon(0.02));
  CHECK(u_hi == doctest::Approx(1.0).epsilon(0.02));

  const auto [b_lo, b_hi] = decay_constants(ErrorDensity::beta(2.0, 1.0), 1000.0);
  CHECK(b_lo == doctest::Approx(2.0).epsilon(0.02));
  CHECK(b_hi == doctest::Approx(2.0).epsilon(0.02));

  CHECK_THROWS_AS(decay_constants(ErrorDensity::uniform(0.0, 1.0), 50.0),
                  std::invalid_argument);
}

TEST_CASE("family metadata") {
  CHECK(ErrorDensity::uniform(0.0, 1.0).family() == ErrorFamily::kUniform);
  CHECK(ErrorDensity::beta(2.0, 1.0).family() == ErrorFamily::kBeta);
  CHECK(ErrorDensity::degenerate().family() == ErrorFamily::kDegenerate);
  CHECK(ErrorDensity::uniform(0.5, 1.5).name() == "uniform(0.5, 1.5)");
}

}  // TEST_SUITE
