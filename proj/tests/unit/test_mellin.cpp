#include <cmath>
#include <complex>
#include <doctest.h>
#include <stdexcept>

#include "mdeconv/complex_gamma.hpp"
#include "mdeconv/mellin.hpp"

using mdeconv::complex_gamma;
using mdeconv::mellin_invert;
using mdeconv::mellin_numeric;
using mdeconv::MellinGrid;
using mdeconv::tabulate_mellin;
using cd = std::complex<double>;

namespace {

double gamma21_pdf(double x) { return x * std::exp(-x); }

double weibull25_pdf(double x) {
  const double z = x / 5.0;
  return 0.4 * z * std::exp(-z * z);
}

cd gamma21_mt(double p) { return complex_gamma({2.0, p}); }  // Gamma(2+ip)/Gamma(2)

cd weibull25_mt(double p) {
  // scale^{ip} Gamma(1 + ip/shape)
  return std::polar(1.0, p * std::log(5.0)) * complex_gamma({1.0, p / 2.0});
}

}  // namespace

TEST_SUITE("mellin") {

TEST_CASE("numeric transform matches gamma closed form") {
  for (double p : {0.0, 0.5, 1.0, -2.7, 6.0}) {
    const cd got = mellin_numeric(gamma21_pdf, p, 0.0, 60.0, 1e-11);
    const cd want = gamma21_mt(p);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("numeric transform matches weibull closed form") {
  for (double p : {0.0, 2.0, -3.3}) {
    const cd got = mellin_numeric(weibull25_pdf, p, 0.0, 200.0, 1e-11);
    const cd want = weibull25_mt(p);
    CHECK(std::abs(got - want) < 1e-9);
  }
  // Independently frozen reference at p = 2.
  CHECK(std::abs(mellin_numeric(weibull25_pdf, 2.0, 0.0, 200.0, 1e-11) -
                 cd(-0.50849225914126825, 0.11603739645279214)) < 1e-9);
}

TEST_CASE("transform at p = 0 is the total mass") {
  CHECK(std::abs(mellin_numeric(gamma21_pdf, 0.0, 0.0, 60.0, 1e-11) - cd(1.0, 0.0)) < 1e-9);
}

TEST_CASE("compact support uses the finite window directly") {
  // Uniform(0.5, 1.5): (b^{1+ip} - a^{1+ip}) / ((b-a)(1+ip)).
  const double p = 2.7;
  const cd ip(0.0, p);
  const cd one_ip(1.0, p);
  const auto pw = [&](double x) { return x * std::polar(1.0, p * std::log(x)); };
  const cd want = (pw(1.5) - pw(0.5)) / one_ip;
  const cd got = mellin_numeric([](double) { return 1.0; }, p, 0.5, 1.5, 1e-11);
  CHECK(std::abs(got - want) < 1e-9);
  (void)ip;
}

TEST_CASE("inversion recovers the gamma density") {
  const MellinGrid grid = tabulate_mellin(gamma21_mt, 60.0, 0.05);
  grid.validate();
  for (double x : {0.3, 1.0, 2.5, 5.0}) {
    const auto r = mellin_invert(grid, x);
    CHECK(std::abs(r.value - gamma21_pdf(x)) < 1e-6);
    CHECK(r.imag_residual < 1e-9);
  }
}

TEST_CASE("inversion recovers the weibull density") {
  const MellinGrid grid = tabulate_mellin(weibull25_mt, 60.0, 0.02);
  for (double x : {1.0, 4.0, 9.0}) {
    const auto r = mellin_invert(grid, x);
    CHECK(std::abs(r.value - weibull25_pdf(x)) < 1e-6);
  }
}

TEST_CASE("inversion rejects nonpositive x") {
  const MellinGrid grid = tabulate_mellin(gamma21_mt, 10.0, 0.1);
  CHECK_THROWS_AS(mellin_invert(grid, 0.0), std::domain_error);
  CHECK_THROWS_AS(mellin_invert(grid, -1.0), std::domain_error);
}

TEST_CASE("grid validation rejects malformed grids") {
  MellinGrid bad;
  bad.p_values = {-1.0, 0.0, 2.0};  // asymmetric
  bad.values = {cd(1, 0), cd(1, 0), cd(1, 0)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  MellinGrid mismatch;
  mismatch.p_values = {-1.0, 0.0, 1.0};
  mismatch.values = {cd(1, 0), cd(1, 0)};
  CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);

  MellinGrid unsorted;
  unsorted.p_values = {1.0, 0.0, -1.0};
  unsorted.values = {cd(1, 0), cd(1, 0), cd(1, 0)};
  CHECK_THROWS_AS(unsorted.validate(), std::invalid_argument);
}

}  // TEST_SUITE
