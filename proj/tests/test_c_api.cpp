#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "exit_ibp/exit_ibp.h"

namespace {

const char* kConfig = R"({
  "experiment_id": "c-api",
  "estimator": "derivative",
  "model_preset": {"name": "constant"},
  "f_preset": {"name": "linear_shifted"},
  "T": 1, "x0": 1, "L": 0,
  "n_samples": 4000, "chunk_size": 1000, "seed": 2,
  "median_of_means_blocks": 4
})";

std::filesystem::path test_dir() {
  const char* dir = std::getenv("EIBP_TEST_DIR");
  return dir ? std::filesystem::path(dir) : std::filesystem::temp_directory_path();
}

}  // namespace

TEST_CASE("version") { CHECK(std::string(eibp_version()) == "0.1.0"); }

TEST_CASE("configuration errors map to status 2") {
  eibp_experiment* e = nullptr;
  CHECK(eibp_experiment_from_json("{ not json", &e) == EIBP_CONFIG_ERROR);
  CHECK(e == nullptr);
  CHECK(std::string(eibp_last_error()).find("syntax") != std::string::npos);
  CHECK(eibp_experiment_from_json(R"({"experiment_id": "x"})", &e) == EIBP_CONFIG_ERROR);
  CHECK(std::string(eibp_last_error()).find("'estimator'") != std::string::npos);
  CHECK(eibp_experiment_from_file("/nonexistent.json", &e) == EIBP_CONFIG_ERROR);
}

TEST_CASE("null arguments map to status 4") {
  eibp_experiment* e = nullptr;
  CHECK(eibp_experiment_from_json(nullptr, &e) == EIBP_INVALID_ARGUMENT);
  CHECK(eibp_experiment_from_json(kConfig, nullptr) == EIBP_INVALID_ARGUMENT);
  CHECK(eibp_experiment_run(nullptr, nullptr) == EIBP_INVALID_ARGUMENT);
  CHECK(eibp_experiment_save(nullptr, nullptr) == EIBP_INVALID_ARGUMENT);
  CHECK(eibp_validate(nullptr, nullptr, nullptr) == EIBP_INVALID_ARGUMENT);
  CHECK(std::string(eibp_experiment_summary(nullptr)).empty());
  eibp_experiment_free(nullptr);
}

TEST_CASE("run and save an experiment") {
  eibp_experiment* e = nullptr;
  REQUIRE(eibp_experiment_from_json(kConfig, &e) == EIBP_OK);
  CHECK(eibp_experiment_save(e, nullptr) == EIBP_INVALID_ARGUMENT);

  eibp_result r{};
  REQUIRE(eibp_experiment_run(e, &r) == EIBP_OK);
  CHECK(r.count + r.abort_count == 4000);
  CHECK(std::abs(r.mean - 0.31731050786291415) < 4.0 * r.std_error);
  CHECK(r.ci99_lo < r.mean);
  CHECK(r.ci99_hi > r.mean);
  CHECK(r.has_median_of_means == 1);
  CHECK(r.has_bias_band == 0);
  CHECK(std::string(eibp_experiment_summary(e)).find("derivative") != std::string::npos);

  const auto csv = test_dir() / "c_api_result.csv";
  std::filesystem::remove(csv);
  CHECK(eibp_experiment_save(e, csv.string().c_str()) == EIBP_OK);
  std::ifstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.rfind("experiment_id,estimator", 0) == 0);
  CHECK(row.rfind("c-api,derivative,\"constant(a=1,b=0)\",linear_shifted,", 0) == 0);
  eibp_experiment_free(e);
}

TEST_CASE("a failed run leaves a message and no result") {
  // Quadrature needs constant coefficients; the tanh preset is rejected at run time.
  const char* config = R"({
    "experiment_id": "bad", "estimator": "oracle_quadrature",
    "model_preset": {"name": "tanh"}, "f_preset": {"name": "cosine"},
    "T": 1, "x0": 1, "L": 0, "n_samples": 1, "seed": 1
  })";
  eibp_experiment* e = nullptr;
  REQUIRE(eibp_experiment_from_json(config, &e) == EIBP_OK);
  CHECK(eibp_experiment_run(e, nullptr) == EIBP_CONFIG_ERROR);
  CHECK(std::string(eibp_last_error()).find("constant coefficients") != std::string::npos);
  CHECK(eibp_experiment_save(e, nullptr) == EIBP_INVALID_ARGUMENT);
  eibp_experiment_free(e);
}

TEST_CASE("unknown validation suite") {
  CHECK(eibp_validate("nightly", nullptr, nullptr) == EIBP_CONFIG_ERROR);
  CHECK(std::string(eibp_last_error()).find("nightly") != std::string::npos);
}
