#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "mdeconv/estimator.hpp"
#include "mdeconv/processes.hpp"

namespace mdeconv {

using ProcessParams = std::variant<CirParams, MDependentParams>;

enum class BandwidthRule { kDefaultFormula, kFixed };

struct ExperimentSpec {
  ProcessParams process = CirParams{};
  NoiseSpec noise;
  std::size_t n = 500;
  std::size_t replications = 100;
  std::vector<double> x_grid;
  int kernel_order = 2;
  BandwidthRule bandwidth_rule = BandwidthRule::kDefaultFormula;
  double fixed_bandwidth = 0.0;
  double smoothness_s = 2.0;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// The invariant / marginal density of the signal process in the spec.
double true_density(const ProcessParams& process, double x);

struct MseCell {
  double x = 0.0;
  double mse = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // mse - bias^2 by construction
};

struct MseReport {
  ExperimentSpec spec;
  double bandwidth = 0.0;
  std::vector<MseCell> cells;
};

// Monte Carlo study: per replication, simulate a signal path and a noise
// sequence from seeds derived as (master, replication, stream), form
// Y = X * U, estimate the density, and aggregate squared errors against
// the true invariant density on the grid. Deterministic for a fixed
// master seed regardless of the thread count.
MseReport run_mse_experiment(const ExperimentSpec& spec);

struct SlopeReport {
  std::vector<std::size_t> n_values;
  std::vector<double> mse_values;  // at x_star, per n
  double fitted_slope = 0.0;       // of log mse against log n
  double theoretical_slope = 0.0;  // -2s / (1 + 2 kappa + 2s)
  double x_star = 0.0;
};

// Reruns the experiment across sample sizes and fits the MSE decay rate
// at one grid point. Uses the default bandwidth rule regardless of the
// base spec, since the rate statement is tied to it.
SlopeReport rate_check(const ExperimentSpec& base, const std::vector<std::size_t>& n_values,
                       double x_star);

struct NormalityReport {
  double x_star = 0.0;
  double bandwidth = 0.0;
  std::size_t replications = 0;
  double sample_variance = 0.0;  // of z_r = sqrt(n) b^{1/2+kappa} (f_hat_r - mean)
  double sigma1_sq = 0.0;        // theoretical envelope, upper
  double sigma2_sq = 0.0;        // theoretical envelope, lower
  double f_y_plugin = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_distance = 0.0;  // against a centered normal at the envelope midpoint
};

// Studies the centered, rate-scaled estimator values at one grid point.
// Requires at least 200 replications for the shape statistics to mean
// anything.
NormalityReport normality_check(const ExperimentSpec& spec, double x_star);

// JSON carries the full spec echo and round-trips bit-exactly; CSV carries
// the plot-ready columns (x, noise_family, n, replications, mse, bias,
// variance). The format follows the file extension.
void persist_report(const MseReport& report, const std::filesystem::path& path);
MseReport load_report(const std::filesystem::path& path);

// Spec <-> JSON text (strict: unknown keys are rejected). Shared by the
// reports and the CLI config format.
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

}  // namespace mdeconv
