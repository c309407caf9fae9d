#pragma once

#include <cstddef>
#include <vector>

namespace mdeconv {

// Standard normal CDF, accurate to full double precision via erfc.
double normal_cdf(double z);

// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
// relative error below 1e-15 on (0, 1). Throws std::domain_error outside.
double normal_quantile(double u);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;         // unbiased (divisor n-1)
  double skewness = 0.0;         // m3 / m2^{3/2}, biased central moments
  double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
};
SampleMoments sample_moments(const std::vector<double>& xs);

// Kolmogorov-Smirnov distance between the empirical CDF of xs and the
// normal CDF with the given mean and standard deviation.
double ks_distance_normal(const std::vector<double>& xs, double mean, double sd);

// KS distance against an arbitrary CDF supplied as a callable.
double ks_distance(const std::vector<double>& xs, double (*cdf)(double, const void*),
                   const void* ctx);

// Sample autocorrelation at the given lag (0 <= lag < xs.size()).
double autocorrelation(const std::vector<double>& xs, std::size_t lag);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mdeconv
