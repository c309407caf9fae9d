#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdeconv {

// A sampled path of a positive-valued process, observed at a fixed time step.
// Log-values are cached because every Mellin-domain operation works on them.
class ObservationSeries {
public:
  ObservationSeries(std::vector<double> values, double delta)
      : values_(std::move(values)), delta_(delta) {
    if (!(delta > 0.0)) {
      throw std::invalid_argument("ObservationSeries: delta must be positive");
    }
    log_values_.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error("ObservationSeries: value at index " + std::to_string(i) +
                                " is not strictly positive");
      }
      log_values_.push_back(std::log(v));
    }
  }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& log_values() const { return log_values_; }
  double delta() const { return delta_; }
  std::size_t size() const { return values_.size(); }

private:
  std::vector<double> values_;
  std::vector<double> log_values_;
  double delta_;
};

}  // namespace mdeconv
