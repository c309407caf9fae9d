#include "mdeconv/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mdeconv/parallel.hpp"
#include "mdeconv/rng.hpp"
#include "mdeconv/stats.hpp"

namespace mdeconv {

namespace {

using nlohmann::json;

std::string noise_family_token(const ErrorDensity& law) {
  switch (law.family()) {
    case ErrorFamily::kUniform: return "uniform";
    case ErrorFamily::kBeta: return "beta";
    case ErrorFamily::kDegenerate: return "degenerate";
  }
  throw std::logic_error("noise_family_token: unknown family");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("unknown key '" + item.key() + "' in " + context);
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentSpec::validate() const {
  std::visit([](const auto& p) { p.validate(); }, process);
  noise.validate();
  if (n < 2) throw std::invalid_argument("ExperimentSpec: n must be >= 2");
  if (replications < 1) throw std::invalid_argument("ExperimentSpec: replications must be >= 1");
  if (x_grid.empty()) throw std::invalid_argument("ExperimentSpec: x_grid must be nonempty");
  for (double x : x_grid) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("ExperimentSpec: x_grid entries must be finite and positive");
    }
  }
  if (kernel_order < 1 || kernel_order > 10) {
    throw std::invalid_argument("ExperimentSpec: kernel_order must lie in [1, 10]");
  }
  if (bandwidth_rule == BandwidthRule::kFixed && !(fixed_bandwidth > 0.0)) {
    throw std::invalid_argument(
        "ExperimentSpec: fixed bandwidth rule requires a positive fixed_bandwidth");
  }
  if (!(smoothness_s > 0.0)) {
    throw std::invalid_argument("ExperimentSpec: smoothness_s must be positive");
  }
}

double true_density(const ProcessParams& process, double x) {
  if (x <= 0.0) return 0.0;
  if (std::holds_alternative<CirParams>(process)) {
    const auto [shape, rate] = gamma_invariant_params(std::get<CirParams>(process));
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                    std::lgamma(shape));
  }
  const auto& p = std::get<MDependentParams>(process);
  if (p.marginal == MarginalFamily::kWeibull) {
    const double z = x / p.scale;
    return p.shape / p.scale * std::pow(z, p.shape - 1.0) * std::exp(-std::pow(z, p.shape));
  }
  return std::exp((p.shape - 1.0) * std::log(x) - x / p.scale - std::lgamma(p.shape) -
                  p.shape * std::log(p.scale));
}

namespace {

ObservationSeries simulate_signal(const ProcessParams& process, std::size_t n,
                                  std::uint64_t seed) {
  if (std::holds_alternative<CirParams>(process)) {
    return simulate_cir(std::get<CirParams>(process), n, seed);
  }
  return simulate_m_dependent(std::get<MDependentParams>(process), n, seed);
}

struct RunOutput {
  double bandwidth = 0.0;
  std::vector<std::vector<double>> rows;  // rows[r][i]: estimate at x_grid[i]
  std::vector<double> f_y_plugin;         // log-KDE of f_Y at x_grid[0], per replication
};

RunOutput run_replications(const ExperimentSpec& spec, const std::vector<double>& x_grid,
                           bool want_plugin) {
  const Kernel kernel = make_kernel(spec.kernel_order);
  const double kappa = spec.noise.law.kappa();
  const double bandwidth = (spec.bandwidth_rule == BandwidthRule::kDefaultFormula)
                               ? default_bandwidth(spec.n, kappa, spec.smoothness_s)
                               : spec.fixed_bandwidth;

  RunOutput out;
  out.bandwidth = bandwidth;
  out.rows.assign(spec.replications, {});
  if (want_plugin) out.f_y_plugin.assign(spec.replications, 0.0);

  parallel_for(spec.replications, spec.threads, [&](std::size_t r) {
    const ObservationSeries signal =
        simulate_signal(spec.process, spec.n, derive_seed(spec.master_seed, r, 0));
    const ObservationSeries noise =
        simulate_noise(spec.noise, spec.n, derive_seed(spec.master_seed, r, 1));
    const ObservationSeries data = contaminate(signal, noise);

    EstimatorConfig config = default_config(data, x_grid, kappa, spec.smoothness_s);
    config.bandwidth = bandwidth;
    config.quad_p_max = 10.0 / bandwidth;

    out.rows[r] = estimate_density(data, spec.noise.law, kernel, config, x_grid).values;
    if (want_plugin) {
      // Silverman-style reference bandwidth on the log scale for the
      // observation-density plug-in.
      const auto& logs = data.log_values();
      double mean = 0.0;
      for (double l : logs) mean += l;
      mean /= static_cast<double>(logs.size());
      double var = 0.0;
      for (double l : logs) var += (l - mean) * (l - mean);
      var /= static_cast<double>(logs.size() - 1);
      const double b_kde = 1.06 * std::sqrt(var) *
                           std::pow(static_cast<double>(logs.size()), -0.2);
      out.f_y_plugin[r] = estimate_f_y_log_kde(data, x_grid[0], b_kde);
    }
  });
  return out;
}

}  // namespace

MseReport run_mse_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const RunOutput run = run_replications(spec, spec.x_grid, false);

  MseReport report;
  report.spec = spec;
  report.bandwidth = run.bandwidth;
  report.cells.reserve(spec.x_grid.size());
  const double r_count = static_cast<double>(spec.replications);
  for (std::size_t i = 0; i < spec.x_grid.size(); ++i) {
    const double truth = true_density(spec.process, spec.x_grid[i]);
    double mean = 0.0;
    double msq = 0.0;
    for (std::size_t r = 0; r < spec.replications; ++r) {
      const double v = run.rows[r][i];
      mean += v;
      msq += (v - truth) * (v - truth);
    }
    mean /= r_count;
    msq /= r_count;
    MseCell cell;
    cell.x = spec.x_grid[i];
    cell.mse = msq;
    cell.bias = mean - truth;
    cell.variance = msq - cell.bias * cell.bias;
    report.cells.push_back(cell);
  }
  return report;
}

SlopeReport rate_check(const ExperimentSpec& base, const std::vector<std::size_t>& n_values,
                       double x_star) {
  if (n_values.size() < 2) {
    throw std::invalid_argument("rate_check: need at least two sample sizes");
  }
  std::size_t star_index = base.x_grid.size();
  for (std::size_t i = 0; i < base.x_grid.size(); ++i) {
    if (std::abs(base.x_grid[i] - x_star) < 1e-9) {
      star_index = i;
      break;
    }
  }
  if (star_index == base.x_grid.size()) {
    throw std::invalid_argument("rate_check: x_star must be a point of the x grid");
  }

  SlopeReport report;
  report.x_star = x_star;
  report.n_values = n_values;
  std::vector<double> log_n, log_mse;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    ExperimentSpec spec = base;
    spec.n = n_values[i];
    spec.bandwidth_rule = BandwidthRule::kDefaultFormula;
    // Fresh seed stream per sample size so the points of the regression
    // are independent.
    spec.master_seed = derive_seed(base.master_seed, n_values[i], 2);
    const MseReport mse = run_mse_experiment(spec);
    const double value = mse.cells[star_index].mse;
    if (!(value > 0.0)) {
      throw std::runtime_error("rate_check: nonpositive MSE, cannot take logs");
    }
    report.mse_values.push_back(value);
    log_n.push_back(std::log(static_cast<double>(n_values[i])));
    log_mse.push_back(std::log(value));
  }
  report.fitted_slope = ls_slope(log_n, log_mse);
  const double kappa = base.noise.law.kappa();
  report.theoretical_slope =
      -2.0 * base.smoothness_s / (1.0 + 2.0 * kappa + 2.0 * base.smoothness_s);
  return report;
}

NormalityReport normality_check(const ExperimentSpec& spec, double x_star) {
  spec.validate();
  if (spec.replications < 200) {
    throw std::invalid_argument(
        "normality_check: at least 200 replications are required for shape statistics");
  }
  if (!(x_star > 0.0)) throw std::invalid_argument("normality_check: x_star must be positive");

  const std::vector<double> grid{x_star};
  const RunOutput run = run_replications(spec, grid, true);
  const double kappa = spec.noise.law.kappa();

  std::vector<double> values;
  values.reserve(spec.replications);
  for (const auto& row : run.rows) values.push_back(row[0]);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  const double scale =
      std::sqrt(static_cast<double>(spec.n)) * std::pow(run.bandwidth, 0.5 + kappa);
  std::vector<double> z;
  z.reserve(values.size());
  for (double v : values) z.push_back(scale * (v - mean));

  double plugin = 0.0;
  for (double p : run.f_y_plugin) plugin += p;
  plugin /= static_cast<double>(run.f_y_plugin.size());

  const Kernel kernel = make_kernel(spec.kernel_order);
  const VarianceBounds bounds = variance_bounds(spec.noise.law, kernel, plugin, x_star);

  NormalityReport report;
  report.x_star = x_star;
  report.bandwidth = run.bandwidth;
  report.replications = spec.replications;
  report.sigma1_sq = bounds.sigma1_sq;
  report.sigma2_sq = bounds.sigma2_sq;
  report.f_y_plugin = plugin;

  const SampleMoments moments = sample_moments(z);
  report.sample_variance = moments.variance;
  report.skewness = moments.skewness;
  report.excess_kurtosis = moments.excess_kurtosis;
  const double sigma_mid = std::sqrt(0.5 * (bounds.sigma1_sq + bounds.sigma2_sq));
  report.ks_distance = ks_distance_normal(z, 0.0, sigma_mid);
  return report;
}

namespace {

json process_to_json(const ProcessParams& process) {
  json j;
  if (std::holds_alternative<CirParams>(process)) {
    const auto& p = std::get<CirParams>(process);
    j["type"] = "cir";
    j["theta1"] = p.theta1;
    j["theta2"] = p.theta2;
    j["theta3"] = p.theta3;
    j["delta"] = p.delta;
  } else {
    const auto& p = std::get<MDependentParams>(process);
    j["type"] = "m_dependent";
    j["m_dep"] = p.m_dep;
    j["shape"] = p.shape;
    j["scale"] = p.scale;
    j["recycle_prob"] = p.recycle_prob;
    j["marginal"] = (p.marginal == MarginalFamily::kWeibull) ? "weibull" : "gamma";
  }
  return j;
}

ProcessParams process_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) {
    throw std::invalid_argument("process: expected an object with a 'type' key");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "cir") {
    check_keys(j, {"type", "theta1", "theta2", "theta3", "delta"}, "process");
    CirParams p;
    p.theta1 = j.at("theta1").get<double>();
    p.theta2 = j.at("theta2").get<double>();
    p.theta3 = j.at("theta3").get<double>();
    if (j.contains("delta")) p.delta = j.at("delta").get<double>();
    return p;
  }
  if (type == "m_dependent") {
    check_keys(j, {"type", "m_dep", "shape", "scale", "recycle_prob", "marginal"}, "process");
    MDependentParams p;
    if (j.contains("m_dep")) p.m_dep = j.at("m_dep").get<int>();
    if (j.contains("shape")) p.shape = j.at("shape").get<double>();
    if (j.contains("scale")) p.scale = j.at("scale").get<double>();
    if (j.contains("recycle_prob")) p.recycle_prob = j.at("recycle_prob").get<double>();
    if (j.contains("marginal")) {
      const std::string m = j.at("marginal").get<std::string>();
      if (m == "weibull") {
        p.marginal = MarginalFamily::kWeibull;
      } else if (m == "gamma") {
        p.marginal = MarginalFamily::kGamma;
      } else {
        throw std::invalid_argument("process.marginal must be 'weibull' or 'gamma'");
      }
    }
    return p;
  }
  throw std::invalid_argument("process.type must be 'cir' or 'm_dependent'");
}

json noise_to_json(const NoiseSpec& noise) {
  json j;
  j["family"] = noise_family_token(noise.law);
  switch (noise.law.family()) {
    case ErrorFamily::kUniform:
      j["a"] = noise.law.param1();
      j["b"] = noise.law.param2();
      break;
    case ErrorFamily::kBeta:
      j["alpha"] = noise.law.param1();
      j["beta"] = noise.law.param2();
      break;
    case ErrorFamily::kDegenerate:
      break;
  }
  j["m_dependence"] = noise.m_dependence;
  j["recycle_prob"] = noise.recycle_prob;
  return j;
}

NoiseSpec noise_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw std::invalid_argument("noise: expected an object with a 'family' key");
  }
  const std::string family = j.at("family").get<std::string>();
  NoiseSpec spec;
  if (family == "uniform") {
    check_keys(j, {"family", "a", "b", "m_dependence", "recycle_prob"}, "noise");
    spec.law = ErrorDensity::uniform(j.value("a", 0.0), j.value("b", 1.0));
  } else if (family == "beta") {
    check_keys(j, {"family", "alpha", "beta", "m_dependence", "recycle_prob"}, "noise");
    spec.law = ErrorDensity::beta(j.value("alpha", 1.0), j.value("beta", 1.0));
  } else if (family == "degenerate") {
    check_keys(j, {"family", "m_dependence", "recycle_prob"}, "noise");
    spec.law = ErrorDensity::degenerate();
  } else {
    throw std::invalid_argument("noise.family must be 'uniform', 'beta' or 'degenerate'");
  }
  spec.m_dependence = j.value("m_dependence", 0);
  spec.recycle_prob = j.value("recycle_prob", 0.5);
  return spec;
}

json spec_to_json_obj(const ExperimentSpec& spec) {
  json j;
  j["process"] = process_to_json(spec.process);
  j["noise"] = noise_to_json(spec.noise);
  j["n"] = spec.n;
  j["replications"] = spec.replications;
  j["x_grid"] = spec.x_grid;
  j["kernel_order"] = spec.kernel_order;
  if (spec.bandwidth_rule == BandwidthRule::kDefaultFormula) {
    j["bandwidth"] = {{"rule", "default"}};
  } else {
    j["bandwidth"] = {{"rule", "fixed"}, {"value", spec.fixed_bandwidth}};
  }
  j["smoothness_s"] = spec.smoothness_s;
  j["master_seed"] = spec.master_seed;
  j["threads"] = spec.threads;
  return j;
}

ExperimentSpec spec_from_json_obj(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment spec: expected a JSON object");
  check_keys(j,
             {"process", "noise", "n", "replications", "x_grid", "kernel_order", "bandwidth",
              "smoothness_s", "master_seed", "threads"},
             "experiment spec");
  for (const char* required : {"process", "noise", "n", "replications", "x_grid"}) {
    if (!j.contains(required)) {
      throw std::invalid_argument(std::string("experiment spec: missing key '") + required +
                                  "'");
    }
  }
  ExperimentSpec spec;
  spec.process = process_from_json(j.at("process"));
  spec.noise = noise_from_json(j.at("noise"));
  spec.n = j.at("n").get<std::size_t>();
  spec.replications = j.at("replications").get<std::size_t>();
  spec.x_grid = j.at("x_grid").get<std::vector<double>>();
  spec.kernel_order = j.value("kernel_order", 2);
  if (j.contains("bandwidth")) {
    const json& b = j.at("bandwidth");
    check_keys(b, {"rule", "value"}, "bandwidth");
    const std::string rule = b.at("rule").get<std::string>();
    if (rule == "default") {
      spec.bandwidth_rule = BandwidthRule::kDefaultFormula;
    } else if (rule == "fixed") {
      spec.bandwidth_rule = BandwidthRule::kFixed;
      spec.fixed_bandwidth = b.at("value").get<double>();
    } else {
      throw std::invalid_argument("bandwidth.rule must be 'default' or 'fixed'");
    }
  }
  spec.smoothness_s = j.value("smoothness_s", 2.0);
  spec.master_seed = j.value("master_seed", std::uint64_t{1});
  spec.threads = j.value("threads", 0u);
  spec.validate();
  return spec;
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) { return spec_to_json_obj(spec).dump(2); }

ExperimentSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment spec: invalid JSON: ") + e.what());
  }
  return spec_from_json_obj(j);
}

void persist_report(const MseReport& report, const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("persist_report: cannot open '" + path.string() +
                             "' for writing");
  }
  if (ext == ".json") {
    json j;
    j["format"] = "mse_report";
    j["version"] = 1;
    j["spec"] = spec_to_json_obj(report.spec);
    j["bandwidth"] = report.bandwidth;
    json cells = json::array();
    for (const MseCell& c : report.cells) {
      cells.push_back({{"x", c.x}, {"mse", c.mse}, {"bias", c.bias}, {"variance", c.variance}});
    }
    j["results"] = cells;
    out << j.dump(2) << '\n';
  } else if (ext == ".csv") {
    out << "x,noise_family,n,replications,mse,bias,variance\n";
    const std::string family = noise_family_token(report.spec.noise.law);
    for (const MseCell& c : report.cells) {
      out << format_double(c.x) << ',' << family << ',' << report.spec.n << ','
          << report.spec.replications << ',' << format_double(c.mse) << ','
          << format_double(c.bias) << ',' << format_double(c.variance) << '\n';
    }
  } else {
    throw std::invalid_argument("persist_report: unsupported extension '" + ext +
                                "' (use .json or .csv)");
  }
  if (!out.good()) {
    throw std::runtime_error("persist_report: write to '" + path.string() + "' failed");
  }
}

MseReport load_report(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    throw std::invalid_argument(
        "load_report: the CSV export is one-way; load the JSON report instead");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_report: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("load_report: invalid JSON: ") + e.what());
  }
  check_keys(j, {"format", "version", "spec", "bandwidth", "results"}, "report");
  if (j.value("format", "") != "mse_report" || j.value("version", 0) != 1) {
    throw std::invalid_argument("load_report: not a version-1 mse_report file");
  }
  MseReport report;
  report.spec = spec_from_json_obj(j.at("spec"));
  report.bandwidth = j.at("bandwidth").get<double>();
  for (const json& c : j.at("results")) {
    check_keys(c, {"x", "mse", "bias", "variance"}, "results entry");
    MseCell cell;
    cell.x = c.at("x").get<double>();
    cell.mse = c.at("mse").get<double>();
    cell.bias = c.at("bias").get<double>();
    cell.variance = c.at("variance").get<double>();
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace mdeconv
