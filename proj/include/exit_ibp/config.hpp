#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "exit_ibp/chain.hpp"

namespace exit_ibp {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class EstimatorChoice { Representation, TimeFunctional, Derivative, OracleQuadrature, OracleEuler };

const char* to_string(EstimatorChoice choice);

struct Preset {
  std::string name;
  std::map<std::string, double> params;

  /// name(k1=v1,k2=v2) with keys in sorted order; just the name without params.
  std::string label() const;
};

struct ExperimentConfig {
  std::string experiment_id;
  EstimatorChoice estimator = EstimatorChoice::Representation;
  Preset model_preset;
  Preset f_preset;
  std::optional<double> lambda;  ///< empty means 1 / T
  double T = 1.0;
  double x0 = 1.0;
  double L = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t chunk_size = 4096;
  std::uint64_t seed = 0;
  std::optional<int> workers;    ///< empty means "auto"
  int n_max = 60;
  std::optional<int> median_of_means_blocks;
  std::optional<std::string> output_csv;
  std::optional<std::string> dump_paths;

  // Optional keys beyond the core schema.
  Scheme scheme = Scheme::Gaussian;
  /// oracle_quadrature: functional | hit_only | derivative | derivative_with_atom
  /// oracle_euler: functional | derivative
  std::string oracle_target = "functional";
  int euler_steps = 10000;
  int euler_coarse_factor = 10;

  double lambda_value() const { return lambda ? *lambda : 1.0 / T; }
  /// EXIT_IBP_THREADS, when set, wins over the configured value.
  int resolved_workers() const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the offending field. Syntax errors report the byte
/// offset and line.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace exit_ibp
