#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "exit_ibp/config.hpp"
#include "exit_ibp/statistics.hpp"

namespace exit_ibp {

struct ExperimentResult {
  std::string experiment_id;
  std::string estimator;     ///< estimator name; oracles carry their target, e.g. oracle_euler:derivative
  std::string model_preset;  ///< Preset::label()
  std::string f_preset;
  double lambda = 0.0;
  double T = 0.0;
  double x0 = 0.0;
  double L = 0.0;
  std::int64_t n_samples = 0;
  McStatistics stats;
  std::optional<double> median_of_means;
  std::optional<double> bias_band;  ///< Euler oracle only
  double seconds = 0.0;
  std::string path_dump;            ///< dump rows without header

  double mean() const { return stats.mean; }
  double stderr_of_mean() const { return stats.stderr_of_mean(); }
};

/// Runs the configured estimator or oracle. Throws EstimatorFault or
/// DegeneratePathError on a runtime fault, QuadratureError when an oracle
/// integral does not converge.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// experiment_id,estimator,model_preset,f_preset,lambda,T,x0,L,n_samples,
/// mean,stderr,ci99_lo,ci99_hi,kurtosis,abort_count,seconds
std::string csv_header();
/// Fields are RFC 4180 quoted where needed; reals use %.17g.
std::string csv_row(const ExperimentResult& result);
/// Appends one row, writing the header first when the file is new or empty.
void append_csv(const std::string& path, const ExperimentResult& result);
/// Writes the header and every dumped path row.
void write_path_dump(const std::string& path, const ExperimentResult& result);

std::string format_summary(const ExperimentResult& result);

}  // namespace exit_ibp
