#include "mdeconv/series_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace mdeconv {

void write_series_csv(const ObservationSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_series_csv: cannot open '" + path.string() +
                             "' for writing");
  }
  out << "value\n";
  char buf[64];
  for (double v : series.values()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << '\n';
  }
  if (!out.good()) {
    throw std::runtime_error("write_series_csv: write to '" + path.string() + "' failed");
  }
}

ObservationSeries read_series_csv(const std::filesystem::path& path, double delta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_series_csv: cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("read_series_csv: '" + path.string() + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "value") {
    throw std::invalid_argument("read_series_csv: line 1: expected header 'value', got '" +
                                line + "'");
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    std::size_t consumed = 0;
    try {
      v = std::stod(line, &consumed);
    } catch (const std::exception&) {
      throw std::invalid_argument("read_series_csv: line " + std::to_string(line_no) +
                                  ": cannot parse '" + line + "' as a number");
    }
    if (consumed != line.size()) {
      throw std::invalid_argument("read_series_csv: line " + std::to_string(line_no) +
                                  ": trailing characters after the number in '" + line + "'");
    }
    if (!(v > 0.0)) {
      throw std::domain_error("read_series_csv: line " + std::to_string(line_no) +
                              ": value must be strictly positive, got '" + line + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::invalid_argument("read_series_csv: '" + path.string() + "' has no data rows");
  }
  return ObservationSeries(std::move(values), delta);
}

void write_series_sidecar(const SeriesSidecar& sidecar, const std::filesystem::path& path) {
  nlohmann::json j;
  j["n"] = sidecar.n;
  j["delta"] = sidecar.delta;
  j["seed"] = sidecar.seed;
  j["generator"] = sidecar.generator;
  j["params"] = sidecar.params_json.empty() ? nlohmann::json::object()
                                            : nlohmann::json::parse(sidecar.params_json);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_series_sidecar: cannot open '" + path.string() +
                             "' for writing");
  }
  out << j.dump(2) << '\n';
  if (!out.good()) {
    throw std::runtime_error("write_series_sidecar: write to '" + path.string() + "' failed");
  }
}

SeriesSidecar read_series_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_series_sidecar: cannot open '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("read_series_sidecar: invalid JSON: ") + e.what());
  }
  SeriesSidecar sidecar;
  sidecar.n = j.at("n").get<std::size_t>();
  sidecar.delta = j.at("delta").get<double>();
  sidecar.seed = j.at("seed").get<std::uint64_t>();
  sidecar.generator = j.at("generator").get<std::string>();
  sidecar.params_json = j.at("params").dump();
  return sidecar;
}

}  // namespace mdeconv
