#include "mdeconv/processes.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mdeconv/rng.hpp"

namespace mdeconv {

void CirParams::validate() const {
  if (!(theta1 > 0.0 && theta2 > 0.0 && theta3 > 0.0)) {
    throw std::invalid_argument("CirParams: theta1, theta2, theta3 must be positive");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("CirParams: delta must be positive");
  }
  if (!(2.0 * theta1 > theta3 * theta3)) {
    throw std::invalid_argument(
        "CirParams: positivity condition 2 theta1 > theta3^2 violated; the process would "
        "touch zero");
  }
}

std::pair<double, double> gamma_invariant_params(const CirParams& params) {
  params.validate();
  const double s2 = params.theta3 * params.theta3;
  return {2.0 * params.theta1 / s2, 2.0 * params.theta2 / s2};
}

ObservationSeries simulate_cir(const CirParams& params, std::size_t n, std::uint64_t seed) {
  params.validate();
  if (n == 0) throw std::invalid_argument("simulate_cir: n must be >= 1");
  Rng rng(seed);

  const auto [shape, rate] = gamma_invariant_params(params);
  const double decay = std::exp(-params.theta2 * params.delta);
  const double c = 2.0 * params.theta2 / (params.theta3 * params.theta3 * (1.0 - decay));
  const double dof = 4.0 * params.theta1 / (params.theta3 * params.theta3);

  std::vector<double> values;
  values.reserve(n);
  double x = rng.gamma(shape, rate);
  values.push_back(x);
  for (std::size_t i = 1; i < n; ++i) {
    const double noncentrality = 2.0 * c * x * decay;
    x = rng.noncentral_chi_squared(dof, noncentrality) / (2.0 * c);
    values.push_back(x);
  }
  return ObservationSeries(std::move(values), params.delta);
}

ObservationSeries simulate_cir_euler(const CirParams& params, std::size_t n, std::uint64_t seed,
                                     int substeps) {
  params.validate();
  if (n == 0) throw std::invalid_argument("simulate_cir_euler: n must be >= 1");
  if (substeps < 1) throw std::invalid_argument("simulate_cir_euler: substeps must be >= 1");
  Rng rng(seed);

  const auto [shape, rate] = gamma_invariant_params(params);
  const double dt = params.delta / static_cast<double>(substeps);
  const double sqrt_dt = std::sqrt(dt);

  std::vector<double> values;
  values.reserve(n);
  double x = rng.gamma(shape, rate);
  values.push_back(x);
  for (std::size_t i = 1; i < n; ++i) {
    for (int k = 0; k < substeps; ++k) {
      const double xp = std::max(x, 0.0);
      x += (params.theta1 - params.theta2 * xp) * dt +
           params.theta3 * std::sqrt(xp) * sqrt_dt * rng.normal();
    }
    // Full-truncation scheme: the drift pushes the path back up, but a
    // discrete step can still land at or below zero.
    x = std::max(x, 1e-12);
    values.push_back(x);
  }
  return ObservationSeries(std::move(values), params.delta);
}

void MDependentParams::validate() const {
  if (m_dep < 1) throw std::invalid_argument("MDependentParams: m_dep must be >= 1");
  if (!(shape > 0.0 && scale > 0.0)) {
    throw std::invalid_argument("MDependentParams: shape and scale must be positive");
  }
  if (!(recycle_prob >= 0.0 && recycle_prob <= 1.0)) {
    throw std::invalid_argument("MDependentParams: recycle_prob must lie in [0, 1]");
  }
}

namespace {

// Shared recycling engine. `sample` draws one fresh innovation.
template <typename Sampler>
std::vector<double> recycled_sequence(std::size_t n, int m, double rho, Rng& rng,
                                      Sampler&& sample) {
  std::vector<double> out;
  out.reserve(n);
  std::vector<double> window;  // previous innovations, most recent last
  window.reserve(static_cast<std::size_t>(m));
  std::size_t head = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double fresh = sample(rng);
    double value = fresh;
    if (t > 0 && rho > 0.0 && rng.uniform01() < rho) {
      const auto count = window.size();
      auto idx = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(count));
      if (idx >= count) idx = count - 1;
      value = window[idx];
    }
    if (window.size() < static_cast<std::size_t>(m)) {
      window.push_back(fresh);
    } else {
      window[head] = fresh;
      head = (head + 1) % window.size();
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

ObservationSeries simulate_m_dependent(const MDependentParams& params, std::size_t n,
                                       std::uint64_t seed) {
  params.validate();
  if (n == 0) throw std::invalid_argument("simulate_m_dependent: n must be >= 1");
  Rng rng(seed);
  auto values = (params.marginal == MarginalFamily::kWeibull)
                    ? recycled_sequence(n, params.m_dep, params.recycle_prob, rng,
                                        [&params](Rng& r) {
                                          return r.weibull(params.shape, params.scale);
                                        })
                    : recycled_sequence(n, params.m_dep, params.recycle_prob, rng,
                                        [&params](Rng& r) {
                                          return r.gamma(params.shape) * params.scale;
                                        });
  return ObservationSeries(std::move(values), 1.0);
}

void NoiseSpec::validate() const {
  if (m_dependence < 0) throw std::invalid_argument("NoiseSpec: m_dependence must be >= 0");
  if (!(recycle_prob >= 0.0 && recycle_prob <= 1.0)) {
    throw std::invalid_argument("NoiseSpec: recycle_prob must lie in [0, 1]");
  }
}

ObservationSeries simulate_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw std::invalid_argument("simulate_noise: n must be >= 1");
  Rng rng(seed);

  auto draw = [&spec](Rng& r) -> double {
    switch (spec.law.family()) {
      case ErrorFamily::kUniform:
        return r.uniform(spec.law.param1(), spec.law.param2());
      case ErrorFamily::kBeta:
        return r.beta(spec.law.param1(), spec.law.param2());
      case ErrorFamily::kDegenerate:
        return 1.0;
    }
    throw std::logic_error("simulate_noise: unknown error family");
  };

  std::vector<double> values;
  if (spec.m_dependence == 0) {
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) values.push_back(draw(rng));
  } else {
    values = recycled_sequence(n, spec.m_dependence, spec.recycle_prob, rng, draw);
  }
  return ObservationSeries(std::move(values), 1.0);
}

ObservationSeries contaminate(const ObservationSeries& signal, const ObservationSeries& noise) {
  if (signal.size() != noise.size()) {
    throw std::invalid_argument("contaminate: signal and noise lengths differ");
  }
  std::vector<double> values;
  values.reserve(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    values.push_back(signal.values()[i] * noise.values()[i]);
  }
  return ObservationSeries(std::move(values), signal.delta());
}

}  // namespace mdeconv
