#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mdeconv/observation_series.hpp"

namespace mdeconv {

// One observation per line under a `value` header.
void write_series_csv(const ObservationSeries& series, const std::filesystem::path& path);

// Parses a `value` CSV; errors name the offending line (1-based, header
// included). The time step is not stored in the CSV, so the caller
// supplies it (the sidecar carries it for simulated data).
ObservationSeries read_series_csv(const std::filesystem::path& path, double delta = 1.0);

// Provenance sidecar written next to simulated series.
struct SeriesSidecar {
  std::size_t n = 0;
  double delta = 1.0;
  std::uint64_t seed = 0;
  std::string generator;    // e.g. "cir", "m_dependent", "noise"
  std::string params_json;  // generator parameters as a JSON object
};

void write_series_sidecar(const SeriesSidecar& sidecar, const std::filesystem::path& path);
SeriesSidecar read_series_sidecar(const std::filesystem::path& path);

}  // namespace mdeconv
