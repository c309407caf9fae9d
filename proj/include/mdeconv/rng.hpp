#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mdeconv {

// splitmix64 finalizer, used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for (master, replication, stream). Streams 0 and 1 are reserved for
// the signal and noise processes of one replication; no stream is reused.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                                 std::uint64_t stream) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (replication + 0x9e3779b97f4a7c15ULL));
  s = splitmix64(s ^ (stream + 0xd1b54a32d192ed03ULL));
  return s;
}

// mt19937_64 engine with hand-rolled distribution transforms. The standard
// engine output is fully specified, and the transforms below avoid the
// implementation-defined std::*_distribution algorithms, so a seed produces
// the same series on every platform and thread count.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Marsaglia-Tsang; shape boost below 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double gamma(double shape, double rate) { return gamma(shape) / rate; }

  // Knuth's product method; halving via Poisson additivity keeps the
  // per-call cost bounded for large means.
  std::uint64_t poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean > 500.0) {
      const std::uint64_t a = poisson(mean / 2.0);
      return a + poisson(mean - mean / 2.0);
    }
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform01();
    while (prod > limit) {
      ++k;
      prod *= uniform01();
    }
    return k;
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

  double noncentral_chi_squared(double dof, double noncentrality) {
    const std::uint64_t j = poisson(0.5 * noncentrality);
    return 2.0 * gamma(0.5 * dof + static_cast<double>(j));
  }

  double weibull(double shape, double scale) {
    return scale * std::pow(-std::log(uniform01()), 1.0 / shape);
  }

  double beta(double alpha, double beta_param) {
    const double g1 = gamma(alpha);
    const double g2 = gamma(beta_param);
    return g1 / (g1 + g2);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mdeconv
