#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "mdeconv/processes.hpp"
#include "mdeconv/stats.hpp"

using namespace mdeconv;

namespace {

double gamma21_cdf(double x, const void*) {
  return (x <= 0.0) ? 0.0 : 1.0 - std::exp(-x) * (1.0 + x);
}

double weibull25_cdf(double x, const void*) {
  return (x <= 0.0) ? 0.0 : 1.0 - std::exp(-(x / 5.0) * (x / 5.0));
}

}  // namespace

TEST_SUITE("processes") {

TEST_CASE("invariant law parameters and the positivity condition") {
  const CirParams p{1.0, 0.5, 1.0, 1.0};
  const auto [shape, rate] = gamma_invariant_params(p);
  CHECK(shape == doctest::Approx(2.0));
  CHECK(rate == doctest::Approx(1.0));

  CirParams feller{0.4, 0.5, 1.0, 1.0};  // 2*0.4 < 1
  CHECK_THROWS_AS(feller.validate(), std::invalid_argument);
  CirParams negative{1.0, -0.5, 1.0, 1.0};
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("exact sampler: determinism, positivity, stationary moments") {
  const CirParams p{1.0, 0.5, 1.0, 1.0};
  const ObservationSeries a = simulate_cir(p, 20000, 77);
  const ObservationSeries b = simulate_cir(p, 20000, 77);
  const ObservationSeries c = simulate_cir(p, 20000, 78);
  CHECK(a.values() == b.values());
  CHECK(a.values() != c.values());
  CHECK(a.delta() == 1.0);

  double mean = 0.0, var = 0.0;
  for (double v : a.values()) {
    CHECK(v > 0.0);
    mean += v;
  }
  mean /= static_cast<double>(a.size());
  for (double v : a.values()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(a.size() - 1);
  // Invariant gamma(2, 1): mean 2, variance 2.
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(var == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("exact sampler: lag-1 autocorrelation is e^{-theta2 delta}") {
  const CirParams p{1.0, 0.5, 1.0, 1.0};
  const ObservationSeries a = simulate_cir(p, 40000, 101);
  CHECK(autocorrelation(a.values(), 1) ==
        doctest::Approx(std::exp(-0.5)).epsilon(0.05));
}

TEST_CASE("exact sampler: marginal matches the gamma law") {
  const CirParams p{1.0, 0.5, 1.0, 1.0};
  const ObservationSeries a = simulate_cir(p, 30000, 2024);
  CHECK(ks_distance(a.values(), gamma21_cdf, nullptr) < 0.02);
}

TEST_CASE("euler reference scheme lands near the same invariant law") {
  const CirParams p{1.0, 0.5, 1.0, 1.0};
  const ObservationSeries a = simulate_cir_euler(p, 30000, 4242, 32);
  double mean = 0.0;
  for (double v : a.values()) mean += v;
  mean /= static_cast<double>(a.size());
  CHECK(mean == doctest::Approx(2.0).epsilon(0.08));
  CHECK(ks_distance(a.values(), gamma21_cdf, nullptr) < 0.05);
  CHECK_THROWS_AS(simulate_cir_euler(p, 100, 1, 0), std::invalid_argument);
}

TEST_CASE("m-dependent simulator: marginal is exactly weibull") {
  MDependentParams p;  // defaults: m=30, weibull(2, 5), recycle 0.5
  const ObservationSeries a = simulate_m_dependent(p, 50000, 9001);
  CHECK(ks_distance(a.values(), weibull25_cdf, nullptr) < 0.02);
  double mean = 0.0;
  for (double v : a.values()) mean += v;
  mean /= static_cast<double>(a.size());
  CHECK(mean == doctest::Approx(4.4311346272637901).epsilon(0.02));
}

TEST_CASE("m-dependent simulator: dependence dies beyond the window") {
  MDependentParams p;
  const std::size_t n = 100000;
  const ObservationSeries a = simulate_m_dependent(p, n, 515);
  const double band = 4.0 / std::sqrt(static_cast<double>(n));
  // Inside the window the recycling induces positive correlation.
  CHECK(autocorrelation(a.values(), 1) > 2.0 / std::sqrt(static_cast<double>(n)));
  // Beyond the window the sequence is exactly independent.
  for (std::size_t lag = 31; lag <= 45; ++lag) {
    CHECK(std::abs(autocorrelation(a.values(), lag)) < band);
  }
}

TEST_CASE("m-dependent simulator: degenerate cases") {
  MDependentParams copycat;
  copycat.m_dep = 1;
  copycat.recycle_prob = 1.0;
  const ObservationSeries a = simulate_m_dependent(copycat, 5, 3);
  CHECK(a.values()[1] == a.values()[0]);  // the window forces a copy

  MDependentParams iid;
  iid.recycle_prob = 0.0;
  iid.marginal = MarginalFamily::kGamma;
  iid.shape = 2.0;
  iid.scale = 1.0;
  const ObservationSeries g = simulate_m_dependent(iid, 40000, 5150);
  CHECK(ks_distance(g.values(), gamma21_cdf, nullptr) < 0.02);

  MDependentParams bad;
  bad.recycle_prob = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("noise simulator covers the three families") {
  NoiseSpec uniform{ErrorDensity::uniform(0.25, 0.75), 0, 0.5};
  const ObservationSeries u = simulate_noise(uniform, 10000, 11);
  for (double v : u.values()) {
    CHECK(v > 0.25);
    CHECK(v < 0.75);
  }

  NoiseSpec degenerate{ErrorDensity::degenerate(), 0, 0.5};
  const ObservationSeries d = simulate_noise(degenerate, 100, 12);
  for (double v : d.values()) CHECK(v == 1.0);

  NoiseSpec dependent{ErrorDensity::uniform(0.0, 1.0), 5, 0.5};
  const ObservationSeries m = simulate_noise(dependent, 50000, 13);
  CHECK(autocorrelation(m.values(), 1) > 0.01);
  CHECK(std::abs(autocorrelation(m.values(), 6)) < 4.0 / std::sqrt(50000.0));
}

TEST_CASE("contamination is the elementwise product") {
  const ObservationSeries x({1.0, 2.0, 3.0}, 0.5);
  const ObservationSeries u({0.5, 0.5, 2.0}, 1.0);
  const ObservationSeries y = contaminate(x, u);
  CHECK(y.values() == std::vector<double>{0.5, 1.0, 6.0});
  CHECK(y.delta() == 0.5);
  const ObservationSeries short_u({0.5}, 1.0);
  CHECK_THROWS_AS(contaminate(x, short_u), std::invalid_argument);
}

}  // TEST_SUITE
