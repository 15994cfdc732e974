#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "irtmap/report.hpp"
#include "test_support.hpp"

using namespace irtmap;

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -2.40, 0.09, 1e-12, 3.141592653589793, -15.65}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("params json round-trip keyed by labels") {
  const InteractionTable table = test::random_table(6, 3, 40, 71);
  const ModelParams params = test::random_params(table, 5.0, 72);

  const std::string path = "params_roundtrip_test.json";
  write_params_json(path, params, table, 100.0);
  const ModelParams reloaded = read_params_json(path, table);
  std::remove(path.c_str());

  CHECK(reloaded.theta == params.theta);
  CHECK(reloaded.beta == params.beta);
}

TEST_CASE("params json reports missing entities") {
  const InteractionTable small = test::single_cell_table(1, 1);
  const std::string path = "params_missing_test.json";
  {
    std::ofstream out(path);
    out << R"({"theta": {}, "beta": {}})";
  }
  CHECK_THROWS_AS(read_params_json(path, small), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("calibration csv layout") {
  CalibrationTable table;
  table.bins.push_back({0, 5, 0.25, 0.2});
  table.bins.push_back({1, 5, 0.75, 0.8});
  const std::string path = "calibration_test.csv";
  write_calibration_csv(path, table);
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  std::remove(path.c_str());
  CHECK(content.str() ==
        "bin_index,count,mean_predicted,observed_fraction\n"
        "0,5,0.25,0.2\n"
        "1,5,0.75,0.8\n");
}

TEST_CASE("cleaning json carries every counter") {
  CleaningReport report;
  report.rows_read = 10;
  report.rows_kept = 7;
  report.rows_dropped_bad_correctness = 3;
  const std::string path = "cleaning_test.json";
  write_cleaning_json(path, report);
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  std::remove(path.c_str());
  CHECK(content.str().find("\"rows_read\": 10") != std::string::npos);
  CHECK(content.str().find("\"rows_dropped_bad_correctness\": 3") != std::string::npos);
}
