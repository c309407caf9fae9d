#include "mdeconv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdeconv {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

double normal_quantile(double u) {
  // Wichura (1988), algorithm AS 241, PPND16 variant.
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("normal_quantile: argument must lie in (0, 1)");
  }
  const double q = u - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return (q < 0.0) ? -value : value;
}

SampleMoments sample_moments(const std::vector<double>& xs) {
  if (xs.size() < 2) {
    throw std::invalid_argument("sample_moments: need at least 2 observations");
  }
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  SampleMoments out;
  out.mean = mean;
  out.variance = m2 / (n - 1.0);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  out.skewness = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
  out.excess_kurtosis = (m2 > 0.0) ? m4 / (m2 * m2) - 3.0 : 0.0;
  return out;
}

namespace {

double ks_sorted(const std::vector<double>& sorted, double (*cdf)(double, const void*),
                 const void* ctx) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i], ctx);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

struct NormalCtx {
  double mean;
  double sd;
};

double normal_ctx_cdf(double x, const void* ctx) {
  const auto* c = static_cast<const NormalCtx*>(ctx);
  return normal_cdf((x - c->mean) / c->sd);
}

}  // namespace

double ks_distance_normal(const std::vector<double>& xs, double mean, double sd) {
  if (xs.empty()) throw std::invalid_argument("ks_distance_normal: empty sample");
  if (!(sd > 0.0)) throw std::invalid_argument("ks_distance_normal: sd must be positive");
  std::vector<double> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  NormalCtx ctx{mean, sd};
  return ks_sorted(sorted, normal_ctx_cdf, &ctx);
}

double ks_distance(const std::vector<double>& xs, double (*cdf)(double, const void*),
                   const void* ctx) {
  if (xs.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  return ks_sorted(sorted, cdf, ctx);
}

double autocorrelation(const std::vector<double>& xs, std::size_t lag) {
  if (lag >= xs.size()) {
    throw std::invalid_argument("autocorrelation: lag must be smaller than the sample size");
  }
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + lag < xs.size()) num += d * (xs[i + lag] - mean);
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ls_slope: need two same-length samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ls_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace mdeconv
