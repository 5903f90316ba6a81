#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "exit_ibp/experiment.hpp"

using namespace exit_ibp;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.experiment_id = "exp, \"quoted\"";
  c.estimator = EstimatorChoice::Representation;
  c.model_preset = Preset{"constant", {}};
  c.f_preset = Preset{"indicator_before_T", {}};
  c.lambda = 1.0;
  c.n_samples = 5000;
  c.chunk_size = 500;
  c.seed = 17;
  c.workers = 1;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_last_field(const std::string& row) { return row.substr(0, row.rfind(',')); }

std::filesystem::path temp_file(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("exit_ibp_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("csv header and quoting") {
  CHECK(csv_header() ==
        "experiment_id,estimator,model_preset,f_preset,lambda,T,x0,L,n_samples,mean,stderr,ci99_lo,ci99_hi,"
        "kurtosis,abort_count,seconds");
  const ExperimentResult r = run_experiment(small_config());
  const std::string row = csv_row(r);
  INFO(row);
  CHECK(row.rfind("\"exp, \"\"quoted\"\"\",representation,\"constant(a=1,b=0)\",indicator_before_T,1,1,1,0,5000,", 0) == 0);
  CHECK(r.estimator == "representation");
}

TEST_CASE("reruns reproduce every field except the timing") {
  const ExperimentConfig c = small_config();
  const ExperimentResult a = run_experiment(c);
  const ExperimentResult b = run_experiment(c);
  CHECK(without_last_field(csv_row(a)) == without_last_field(csv_row(b)));
  CHECK(a.stats.count + a.stats.abort_count == 5000);
}

TEST_CASE("append_csv writes the header once") {
  const auto path = temp_file("append.csv");
  const ExperimentResult r = run_experiment(small_config());
  append_csv(path.string(), r);
  append_csv(path.string(), r);
  std::istringstream lines(slurp(path));
  std::string line;
  int headers = 0, rows = 0;
  while (std::getline(lines, line)) (line == csv_header() ? headers : rows)++;
  CHECK(headers == 1);
  CHECK(rows == 2);
  std::filesystem::remove(path);
}

TEST_CASE("path dump and median of means") {
  ExperimentConfig c = small_config();
  c.n_samples = 40;
  c.chunk_size = 10;
  c.dump_paths = temp_file("dump.csv").string();
  c.median_of_means_blocks = 4;
  const ExperimentResult r = run_experiment(c);
  REQUIRE(r.median_of_means);
  write_path_dump(*c.dump_paths, r);
  std::istringstream lines(slurp(*c.dump_paths));
  std::string line;
  std::getline(lines, line);
  CHECK(line == path_dump_header());
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 40);
  std::filesystem::remove(*c.dump_paths);
}

TEST_CASE("every estimator and oracle runs through the same entry point") {
  ExperimentConfig c = small_config();
  c.experiment_id = "all";
  c.model_preset = Preset{"tanh", {}};
  c.f_preset = Preset{"polynomial", {}};
  c.n_samples = 2000;
  for (EstimatorChoice e : {EstimatorChoice::Representation, EstimatorChoice::TimeFunctional,
                            EstimatorChoice::Derivative}) {
    c.estimator = e;
    for (Scheme s : {Scheme::Gaussian, Scheme::GigTime}) {
      c.scheme = s;
      const ExperimentResult r = run_experiment(c);
      CHECK(std::isfinite(r.mean()));
      CHECK(r.estimator == to_string(e));
    }
  }
  c.estimator = EstimatorChoice::OracleEuler;
  c.oracle_target = "derivative";
  c.euler_steps = 100;
  const ExperimentResult euler = run_experiment(c);
  CHECK(euler.estimator == "oracle_euler:derivative");
  CHECK(euler.bias_band);

  c.model_preset = Preset{"constant", {}};
  c.estimator = EstimatorChoice::OracleQuadrature;
  c.oracle_target = "derivative_with_atom";
  c.f_preset = Preset{"linear_shifted", {}};
  const ExperimentResult quad = run_experiment(c);
  CHECK(quad.mean() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(quad.stderr_of_mean() == 0.0);

  c.model_preset = Preset{"tanh", {}};
  CHECK_THROWS(run_experiment(c));
}

TEST_CASE("summary mentions the estimate") {
  const ExperimentResult r = run_experiment(small_config());
  const std::string s = format_summary(r);
  CHECK(s.find("representation") != std::string::npos);
}
