#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "mdeconv/series_io.hpp"

using namespace mdeconv;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("series csv round-trips doubles exactly") {
  const std::vector<double> values = {0.1234567890123456789, 3.0, 1e-300, 7.25e120};
  const ObservationSeries series(values, 0.25);
  const auto path = temp_file("mdeconv_series_roundtrip.csv");
  write_series_csv(series, path);
  const ObservationSeries back = read_series_csv(path, 0.25);
  REQUIRE(back.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(back.values()[i] == values[i]);  // bitwise via %.17g
  }
  CHECK(back.delta() == 0.25);
  std::filesystem::remove(path);
}

TEST_CASE("csv reader names the offending line") {
  const auto path = temp_file("mdeconv_series_bad.csv");

  write_text(path, "amount\n1.0\n");
  CHECK_THROWS_WITH_AS(read_series_csv(path), doctest::Contains("header"),
                       std::invalid_argument);

  write_text(path, "value\n1.0\ntwo\n");
  CHECK_THROWS_WITH_AS(read_series_csv(path), doctest::Contains("line 3"),
                       std::invalid_argument);

  write_text(path, "value\n1.0e\n");
  CHECK_THROWS_AS(read_series_csv(path), std::invalid_argument);

  write_text(path, "value\n2.0\n-1.0\n");
  CHECK_THROWS_WITH_AS(read_series_csv(path), doctest::Contains("line 3"),
                       std::domain_error);

  write_text(path, "value\n");
  CHECK_THROWS_AS(read_series_csv(path), std::invalid_argument);

  CHECK_THROWS_AS(read_series_csv(temp_file("mdeconv_no_such_file.csv")),
                  std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("sidecar round-trips") {
  SeriesSidecar meta;
  meta.n = 2000;
  meta.delta = 0.5;
  meta.seed = 987654321;
  meta.generator = "cir";
  meta.params_json = R"({"theta1":1.0,"theta2":0.5,"theta3":1.0})";
  const auto path = temp_file("mdeconv_sidecar.json");
  write_series_sidecar(meta, path);
  const SeriesSidecar back = read_series_sidecar(path);
  CHECK(back.n == meta.n);
  CHECK(back.delta == meta.delta);
  CHECK(back.seed == meta.seed);
  CHECK(back.generator == meta.generator);
  CHECK(back.params_json.find("theta2") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("observation series rejects bad input up front") {
  CHECK_THROWS_AS(ObservationSeries({1.0, 2.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ObservationSeries({1.0, 0.0, 2.0}, 1.0),
                       doctest::Contains("index 1"), std::domain_error);
  const ObservationSeries ok({2.0, 4.0}, 1.0);
  CHECK(ok.log_values()[1] == doctest::Approx(std::log(4.0)));
}

}  // TEST_SUITE
