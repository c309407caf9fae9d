// Command-line front end: simulate paths, estimate densities, verify
// kernel/error-density assumptions, run Monte Carlo experiments, and render
// saved reports.
//
// Exit codes: 0 success, 1 failed verification or accuracy check,
// 2 invalid configuration or input data, 3 I/O failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdeconv/error_density.hpp"
#include "mdeconv/estimator.hpp"
#include "mdeconv/experiment.hpp"
#include "mdeconv/kernel.hpp"
#include "mdeconv/processes.hpp"
#include "mdeconv/quadrature.hpp"
#include "mdeconv/series_io.hpp"

namespace {

using mdeconv::ErrorDensity;
using mdeconv::ExperimentSpec;
using mdeconv::ObservationSeries;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

unsigned resolve_threads(unsigned cli_value, bool cli_set) {
  if (cli_set) return cli_value;
  if (const char* env = std::getenv("MELLIN_DECONV_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0') return static_cast<unsigned>(v);
    throw std::invalid_argument("MELLIN_DECONV_THREADS must be a nonnegative integer");
  }
  return 0;
}

struct NoiseFlags {
  std::string family = "uniform";
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  int m_dependence = 0;
  double recycle_prob = 0.5;

  ErrorDensity law() const {
    if (family == "uniform") return ErrorDensity::uniform(a, b);
    if (family == "beta") return ErrorDensity::beta(alpha, beta);
    if (family == "degenerate") return ErrorDensity::degenerate();
    throw std::invalid_argument("noise family must be 'uniform', 'beta' or 'degenerate'");
  }

  mdeconv::NoiseSpec spec() const { return {law(), m_dependence, recycle_prob}; }
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& flags, bool with_dependence) {
  cmd->add_option("--noise-family", flags.family,
                  "Error density family: uniform, beta or degenerate")
      ->check(CLI::IsMember({"uniform", "beta", "degenerate"}));
  cmd->add_option("--a", flags.a, "Uniform lower endpoint");
  cmd->add_option("--b", flags.b, "Uniform upper endpoint");
  cmd->add_option("--alpha", flags.alpha, "Beta shape alpha");
  cmd->add_option("--beta", flags.beta, "Beta shape beta");
  if (with_dependence) {
    cmd->add_option("--m-dependence", flags.m_dependence,
                    "Noise dependence window (0 = iid)");
    cmd->add_option("--recycle-prob", flags.recycle_prob,
                    "Recycling probability for dependent noise");
  }
}

const char* kPresetTable1 = R"({
  "process": {"type": "cir", "theta1": 1.0, "theta2": 0.5, "theta3": 1.0, "delta": 1.0},
  "noise": {"family": "uniform", "a": 0.0, "b": 1.0, "m_dependence": 0, "recycle_prob": 0.5},
  "n": 2000,
  "replications": 500,
  "x_grid": [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5],
  "kernel_order": 2,
  "bandwidth": {"rule": "default"},
  "smoothness_s": 2.0,
  "master_seed": 135,
  "threads": 0
})";

const char* kPresetTable2 = R"({
  "process": {"type": "m_dependent", "m_dep": 30, "shape": 2.0, "scale": 5.0,
              "recycle_prob": 0.5, "marginal": "weibull"},
  "noise": {"family": "uniform", "a": 0.0, "b": 1.0, "m_dependence": 0, "recycle_prob": 0.5},
  "n": 2000,
  "replications": 500,
  "x_grid": [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
  "kernel_order": 2,
  "bandwidth": {"rule": "default"},
  "smoothness_s": 2.0,
  "master_seed": 135,
  "threads": 0
})";

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& generator, std::size_t n, std::uint64_t seed,
                 const std::string& out_path, const mdeconv::CirParams& cir,
                 const mdeconv::MDependentParams& mdep, const NoiseFlags& noise) {
  ObservationSeries series = [&]() -> ObservationSeries {
    if (generator == "cir") return simulate_cir(cir, n, seed);
    if (generator == "mdep") return simulate_m_dependent(mdep, n, seed);
    return simulate_noise(noise.spec(), n, seed);
  }();

  nlohmann::json params;
  if (generator == "cir") {
    params = {{"theta1", cir.theta1},
              {"theta2", cir.theta2},
              {"theta3", cir.theta3},
              {"delta", cir.delta}};
  } else if (generator == "mdep") {
    params = {{"m_dep", mdep.m_dep},
              {"shape", mdep.shape},
              {"scale", mdep.scale},
              {"recycle_prob", mdep.recycle_prob},
              {"marginal",
               mdep.marginal == mdeconv::MarginalFamily::kWeibull ? "weibull" : "gamma"}};
  } else {
    params = {{"family", noise.family},
              {"m_dependence", noise.m_dependence},
              {"recycle_prob", noise.recycle_prob}};
    if (noise.family == "uniform") {
      params["a"] = noise.a;
      params["b"] = noise.b;
    } else if (noise.family == "beta") {
      params["alpha"] = noise.alpha;
      params["beta"] = noise.beta;
    }
  }

  write_series_csv(series, out_path);
  mdeconv::SeriesSidecar sidecar;
  sidecar.n = series.size();
  sidecar.delta = series.delta();
  sidecar.seed = seed;
  sidecar.generator = (generator == "cir" || generator == "mdep") ? generator : "noise";
  sidecar.params_json = params.dump();
  write_series_sidecar(sidecar, out_path + ".meta.json");

  std::cout << "wrote " << series.size() << " observations to " << out_path << " (sidecar "
            << out_path << ".meta.json)\n";
  return 0;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const std::string& input, double delta, const NoiseFlags& noise,
                 int kernel_order, double bandwidth, double smoothness,
                 const std::vector<double>& x_grid, double level, bool clamp,
                 const std::string& out_path) {
  const ObservationSeries series = mdeconv::read_series_csv(input, delta);
  const ErrorDensity law = noise.law();
  const mdeconv::Kernel kernel = mdeconv::make_kernel(kernel_order);

  mdeconv::EstimatorConfig config =
      mdeconv::default_config(series, x_grid, law.kappa(), smoothness);
  if (bandwidth > 0.0) {
    config.bandwidth = bandwidth;
    config.quad_p_max = 10.0 / bandwidth;
  }
  config.clamp_nonnegative = clamp;

  const mdeconv::DensityEstimate estimate =
      mdeconv::estimate_density(series, law, kernel, config, x_grid);

  std::vector<mdeconv::ConfidenceInterval> intervals;
  if (level > 0.0) {
    // Silverman-style log-scale bandwidth for the observation-density
    // plug-in feeding the variance envelope.
    const auto& logs = series.log_values();
    double mean = 0.0;
    for (double l : logs) mean += l;
    mean /= static_cast<double>(logs.size());
    double var = 0.0;
    for (double l : logs) var += (l - mean) * (l - mean);
    var /= static_cast<double>(logs.size() > 1 ? logs.size() - 1 : 1);
    const double b_kde =
        1.06 * std::sqrt(var) * std::pow(static_cast<double>(logs.size()), -0.2);
    std::vector<mdeconv::VarianceBounds> bounds;
    bounds.reserve(x_grid.size());
    for (double x : x_grid) {
      const double f_y = mdeconv::estimate_f_y_log_kde(series, x, b_kde);
      bounds.push_back(mdeconv::variance_bounds(law, kernel, f_y, x));
    }
    intervals = mdeconv::confidence_intervals(estimate, bounds, level, law.kappa());
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      throw std::runtime_error("estimate: cannot open '" + out_path + "' for writing");
    }
    os = &file;
  }
  *os << (intervals.empty() ? "x,estimate\n" : "x,estimate,ci_lo,ci_hi\n");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    *os << fmt(x_grid[i]) << ',' << fmt(estimate.values[i]);
    if (!intervals.empty()) {
      *os << ',' << fmt(intervals[i].lo) << ',' << fmt(intervals[i].hi);
    }
    *os << '\n';
  }
  if (!out_path.empty()) {
    if (!file.good()) throw std::runtime_error("estimate: write to '" + out_path + "' failed");
    std::cout << "wrote " << x_grid.size() << " grid points to " << out_path
              << " (bandwidth " << fmt6(estimate.bandwidth) << ", imag residual "
              << fmt6(estimate.imag_residual) << ")\n";
  } else {
    std::cout << "# bandwidth " << fmt6(estimate.bandwidth) << ", imag residual "
              << fmt6(estimate.imag_residual) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(int kernel_order, double moment_tol, const NoiseFlags& noise, double kappa,
               double p_max) {
  bool all_pass = true;

  const mdeconv::Kernel kernel = mdeconv::make_kernel(kernel_order);
  const mdeconv::MomentReport moments = mdeconv::verify_moments(kernel, moment_tol);
  double max_residual = 0.0;
  for (double r : moments.residuals) max_residual = std::max(max_residual, r);
  if (moments.pass) {
    std::cout << "kernel order " << kernel_order << ": moments 0.." << kernel_order
              << " pass (max residual " << fmt6(max_residual) << ")\n";
  } else {
    std::cout << "kernel order " << kernel_order << ": moment " << moments.failing_moment
              << " FAILS (residual " << fmt6(moments.residuals[moments.failing_moment])
              << " > tol " << fmt6(moment_tol) << ")\n";
    all_pass = false;
  }

  const ErrorDensity law = noise.law();
  const double kappa_used = (kappa >= 0.0) ? kappa : law.kappa();
  const auto [i1, i2] = mdeconv::verify_ft_integrability(kernel, kappa_used);
  std::cout << "kernel window integrals at kappa " << fmt6(kappa_used) << ": I1 " << fmt6(i1)
            << ", I2 " << fmt6(i2) << '\n';

  const mdeconv::SmoothnessReport report =
      mdeconv::verify_ordinary_smooth(law, p_max, 2000, kappa);
  std::cout << "error density " << law.name() << " at kappa " << fmt6(kappa_used) << ": c_low "
            << fmt6(report.c_low) << ", c_high " << fmt6(report.c_high) << ", tail slope "
            << fmt6(report.tail_slope) << ", derivative bound " << fmt6(report.d_deriv) << ": "
            << (report.pass ? "pass" : "FAIL") << '\n';
  if (!report.pass) all_pass = false;

  return all_pass ? 0 : 1;
}

// -------------------------------------------------------------- experiment

void print_mse_table(const mdeconv::MseReport& report, std::ostream& os) {
  os << "n " << report.spec.n << ", replications " << report.spec.replications
     << ", bandwidth " << fmt6(report.bandwidth) << '\n';
  os << "      x           mse          bias      variance\n";
  char buf[128];
  for (const auto& cell : report.cells) {
    std::snprintf(buf, sizeof(buf), "%7.3f  %12.6g  %12.6g  %12.6g\n", cell.x, cell.mse,
                  cell.bias, cell.variance);
    os << buf;
  }
}

int cmd_experiment(const std::string& config_path, const std::string& preset,
                   bool dump_preset, std::optional<std::size_t> n_override,
                   std::optional<std::size_t> reps_override,
                   std::optional<std::uint64_t> seed_override, unsigned threads,
                   bool threads_set, const NoiseFlags& noise, bool noise_set,
                   const std::string& out_prefix) {
  std::string config_text;
  if (!preset.empty()) {
    if (preset == "table1") {
      config_text = kPresetTable1;
    } else if (preset == "table2") {
      config_text = kPresetTable2;
    } else {
      throw std::invalid_argument("unknown preset '" + preset + "' (use table1 or table2)");
    }
  } else if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("experiment: cannot open config '" + config_path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    config_text = buffer.str();
  } else {
    throw std::invalid_argument("experiment: provide --config or --preset");
  }

  if (dump_preset) {
    // Echo the parsed spec so the dump is valid config input.
    std::cout << mdeconv::spec_to_json(mdeconv::spec_from_json(config_text)) << '\n';
    return 0;
  }

  ExperimentSpec spec = mdeconv::spec_from_json(config_text);
  if (n_override) spec.n = *n_override;
  if (reps_override) spec.replications = *reps_override;
  if (seed_override) spec.master_seed = *seed_override;
  if (noise_set) spec.noise = noise.spec();
  spec.threads = resolve_threads(threads, threads_set);
  spec.validate();

  const mdeconv::MseReport report = mdeconv::run_mse_experiment(spec);
  print_mse_table(report, std::cout);

  if (!out_prefix.empty()) {
    persist_report(report, out_prefix + ".json");
    persist_report(report, out_prefix + ".csv");
    std::cout << "wrote " << out_prefix << ".json and " << out_prefix << ".csv\n";
  }
  return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& input, const std::string& format,
               const std::string& out_path) {
  const mdeconv::MseReport report = mdeconv::load_report(input);
  if (format == "csv") {
    if (out_path.empty()) {
      std::cout << "x,noise_family,n,replications,mse,bias,variance\n";
      const std::string family = [&] {
        switch (report.spec.noise.law.family()) {
          case mdeconv::ErrorFamily::kUniform: return std::string("uniform");
          case mdeconv::ErrorFamily::kBeta: return std::string("beta");
          default: return std::string("degenerate");
        }
      }();
      for (const auto& c : report.cells) {
        std::cout << fmt(c.x) << ',' << family << ',' << report.spec.n << ','
                  << report.spec.replications << ',' << fmt(c.mse) << ',' << fmt(c.bias) << ','
                  << fmt(c.variance) << '\n';
      }
    } else {
      persist_report(report, out_path);
      std::cout << "wrote " << out_path << '\n';
    }
    return 0;
  }
  if (format != "text") {
    throw std::invalid_argument("report: format must be 'text' or 'csv'");
  }
  if (out_path.empty()) {
    print_mse_table(report, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot open '" + out_path + "' for writing");
    print_mse_table(report, out);
    if (!out.good()) throw std::runtime_error("report: write to '" + out_path + "' failed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mellin-deconvolution density estimation toolkit"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate a signal path or a noise sequence");
  std::string sim_generator = "cir";
  std::size_t sim_n = 1000;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "series.csv";
  mdeconv::CirParams sim_cir;
  mdeconv::MDependentParams sim_mdep;
  NoiseFlags sim_noise;
  sim->add_option("--generator", sim_generator,
                  "cir, mdep, uniform, beta or degenerate")
      ->check(CLI::IsMember({"cir", "mdep", "uniform", "beta", "degenerate"}));
  sim->add_option("--n", sim_n, "Number of observations");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "Output CSV path");
  sim->add_option("--theta1", sim_cir.theta1, "CIR drift level");
  sim->add_option("--theta2", sim_cir.theta2, "CIR mean-reversion speed");
  sim->add_option("--theta3", sim_cir.theta3, "CIR volatility");
  sim->add_option("--delta", sim_cir.delta, "CIR sampling step");
  sim->add_option("--m-dep", sim_mdep.m_dep, "Dependence window of the recycling scheme");
  sim->add_option("--shape", sim_mdep.shape, "Marginal shape parameter");
  sim->add_option("--scale", sim_mdep.scale, "Marginal scale parameter");
  sim->add_option("--mdep-recycle-prob", sim_mdep.recycle_prob,
                  "Recycling probability of the signal scheme");
  std::string sim_marginal = "weibull";
  sim->add_option("--marginal", sim_marginal, "Marginal family: weibull or gamma")
      ->check(CLI::IsMember({"weibull", "gamma"}));
  add_noise_flags(sim, sim_noise, true);

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate the invariant density from a CSV");
  std::string est_input;
  double est_delta = 1.0;
  NoiseFlags est_noise;
  int est_order = 2;
  double est_bandwidth = 0.0;
  double est_smoothness = 2.0;
  double est_xmin = 0.5, est_xmax = 4.5, est_xstep = 0.5;
  std::vector<double> est_grid;
  double est_level = 0.95;
  bool est_clamp = false;
  std::string est_out;
  est->add_option("--input", est_input, "CSV of observations (header 'value')")->required();
  est->add_option("--delta", est_delta, "Sampling step of the series");
  add_noise_flags(est, est_noise, false);
  est->add_option("--kernel-order", est_order, "Bias-reduction order of the kernel");
  est->add_option("--bandwidth", est_bandwidth, "Bandwidth (0 = rate-optimal default)");
  est->add_option("--smoothness", est_smoothness, "Assumed smoothness s");
  est->add_option("--x-min", est_xmin, "Grid start");
  est->add_option("--x-max", est_xmax, "Grid end");
  est->add_option("--x-step", est_xstep, "Grid step");
  est->add_option("--x-grid", est_grid, "Explicit grid points (overrides min/max/step)");
  est->add_option("--level", est_level, "Confidence level (0 disables intervals)");
  est->add_flag("--clamp", est_clamp, "Truncate negative estimates at zero");
  est->add_option("--out", est_out, "Output CSV (stdout when omitted)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check kernel moments and error-density decay");
  int ver_order = 2;
  double ver_moment_tol = 1e-8;
  NoiseFlags ver_noise;
  double ver_kappa = -1.0;
  double ver_pmax = 200.0;
  ver->add_option("--kernel-order", ver_order, "Bias-reduction order of the kernel");
  ver->add_option("--moment-tol", ver_moment_tol, "Moment residual tolerance");
  add_noise_flags(ver, ver_noise, false);
  ver->add_option("--kappa", ver_kappa,
                  "Decay exponent to test (-1 = the family's analytic value)");
  ver->add_option("--p-max", ver_pmax, "Frequency window for the decay check");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo MSE experiment");
  std::string exp_config, exp_preset, exp_out;
  bool exp_dump = false;
  std::size_t exp_n = 0, exp_reps = 0;
  std::uint64_t exp_seed = 0;
  unsigned exp_threads = 0;
  NoiseFlags exp_noise;
  exp->add_option("--config", exp_config, "Experiment spec JSON file");
  exp->add_option("--preset", exp_preset, "Embedded preset: table1 or table2");
  exp->add_flag("--dump-preset", exp_dump, "Print the resolved spec JSON and exit");
  auto* exp_n_opt = exp->add_option("--n", exp_n, "Override the sample size");
  auto* exp_reps_opt =
      exp->add_option("--replications", exp_reps, "Override the replication count");
  auto* exp_seed_opt = exp->add_option("--seed", exp_seed, "Override the master seed");
  auto* exp_threads_opt =
      exp->add_option("--threads", exp_threads,
                      "Worker threads (0 = hardware; env MELLIN_DECONV_THREADS)");
  add_noise_flags(exp, exp_noise, true);
  auto* exp_noise_opt = exp->get_option("--noise-family");
  exp->add_option("--out", exp_out, "Output path prefix for .json and .csv reports");

  // report
  auto* rep = app.add_subcommand("report", "Render a saved experiment report");
  std::string rep_input, rep_format = "text", rep_out;
  rep->add_option("--input", rep_input, "Report JSON produced by 'experiment'")->required();
  rep->add_option("--format", rep_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  rep->add_option("--out", rep_out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      sim_mdep.marginal = (sim_marginal == "weibull") ? mdeconv::MarginalFamily::kWeibull
                                                      : mdeconv::MarginalFamily::kGamma;
      return cmd_simulate(sim_generator, sim_n, sim_seed, sim_out, sim_cir, sim_mdep,
                          sim_noise);
    }
    if (est->parsed()) {
      std::vector<double> grid = est_grid;
      if (grid.empty()) {
        if (!(est_xstep > 0.0) || !(est_xmax >= est_xmin)) {
          throw std::invalid_argument("estimate: need x-max >= x-min and a positive x-step");
        }
        for (double x = est_xmin; x <= est_xmax + 1e-12; x += est_xstep) grid.push_back(x);
      }
      return cmd_estimate(est_input, est_delta, est_noise, est_order, est_bandwidth,
                          est_smoothness, grid, est_level, est_clamp, est_out);
    }
    if (ver->parsed()) {
      return cmd_verify(ver_order, ver_moment_tol, ver_noise, ver_kappa, ver_pmax);
    }
    if (exp->parsed()) {
      return cmd_experiment(
          exp_config, exp_preset, exp_dump,
          exp_n_opt->count() ? std::optional<std::size_t>(exp_n) : std::nullopt,
          exp_reps_opt->count() ? std::optional<std::size_t>(exp_reps) : std::nullopt,
          exp_seed_opt->count() ? std::optional<std::uint64_t>(exp_seed) : std::nullopt,
          exp_threads, exp_threads_opt->count() > 0, exp_noise, exp_noise_opt->count() > 0,
          exp_out);
    }
    if (rep->parsed()) {
      return cmd_report(rep_input, rep_format, rep_out);
    }
  } catch (const mdeconv::SingularDivisorError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mdeconv::AccuracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
