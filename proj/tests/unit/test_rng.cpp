#include <cmath>
#include <cstdint>
#include <doctest.h>
#include <set>
#include <vector>

#include "mdeconv/rng.hpp"

using mdeconv::derive_seed;
using mdeconv::Rng;

namespace {

struct MeanVar {
  double mean;
  double var;
};

template <typename Draw>
MeanVar sample(Draw&& draw, std::size_t n) {
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = draw();
    s += x;
    s2 += x * x;
  }
  const double mean = s / static_cast<double>(n);
  return {mean, s2 / static_cast<double>(n) - mean * mean};
}

}  // namespace

TEST_SUITE("rng") {

TEST_CASE("seeded streams are reproducible and distinct") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double ua = a.uniform01();
    all_equal = all_equal && (ua == b.uniform01());
    any_diff = any_diff || (ua != c.uniform01());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("derived seeds differ across replication and stream indices") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 8; ++r) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      seeds.insert(derive_seed(99, r, s));
    }
  }
  CHECK(seeds.size() == 24);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("uniform01 stays inside the open interval") {
  Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(11);
  const auto mv = sample([&] { return rng.normal(); }, 200000);
  CHECK(mv.mean == doctest::Approx(0.0).epsilon(1.0));
  CHECK(std::abs(mv.mean) < 0.01);
  CHECK(mv.var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma moments across the shape boost boundary") {
  Rng rng(13);
  const auto big = sample([&] { return rng.gamma(2.0); }, 200000);
  CHECK(big.mean == doctest::Approx(2.0).epsilon(0.02));
  CHECK(big.var == doctest::Approx(2.0).epsilon(0.05));
  const auto small = sample([&] { return rng.gamma(0.5); }, 200000);
  CHECK(small.mean == doctest::Approx(0.5).epsilon(0.02));
  CHECK(small.var == doctest::Approx(0.5).epsilon(0.05));
  const auto rated = sample([&] { return rng.gamma(2.0, 4.0); }, 100000);
  CHECK(rated.mean == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("poisson moments in both regimes") {
  Rng rng(17);
  const auto small = sample([&] { return static_cast<double>(rng.poisson(4.2)); }, 200000);
  CHECK(small.mean == doctest::Approx(4.2).epsilon(0.02));
  CHECK(small.var == doctest::Approx(4.2).epsilon(0.05));
  const auto large = sample([&] { return static_cast<double>(rng.poisson(1200.0)); }, 20000);
  CHECK(large.mean == doctest::Approx(1200.0).epsilon(0.005));
  CHECK(large.var == doctest::Approx(1200.0).epsilon(0.1));
}

TEST_CASE("chi-squared and its noncentral extension") {
  Rng rng(19);
  const auto central = sample([&] { return rng.chi_squared(4.0); }, 200000);
  CHECK(central.mean == doctest::Approx(4.0).epsilon(0.02));
  CHECK(central.var == doctest::Approx(8.0).epsilon(0.08));
  // noncentral: mean = dof + nc, var = 2(dof + 2 nc)
  const auto nc = sample([&] { return rng.noncentral_chi_squared(4.0, 3.0); }, 200000);
  CHECK(nc.mean == doctest::Approx(7.0).epsilon(0.02));
  CHECK(nc.var == doctest::Approx(20.0).epsilon(0.08));
}

TEST_CASE("weibull and beta moments") {
  Rng rng(23);
  const auto w = sample([&] { return rng.weibull(2.0, 5.0); }, 200000);
  // mean = 5 Gamma(1.5)
  CHECK(w.mean == doctest::Approx(4.4311346272637901).epsilon(0.01));
  const auto b = sample([&] { return rng.beta(2.0, 2.0); }, 200000);
  CHECK(b.mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(b.var == doctest::Approx(0.05).epsilon(0.08));
  Rng r2(29);
  for (int i = 0; i < 10000; ++i) {
    const double v = r2.beta(0.5, 1.5);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

}  // TEST_SUITE
