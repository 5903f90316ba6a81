#include "exit_ibp/exit_ibp.h"

#include <exception>
#include <new>
#include <optional>
#include <string>

#include "exit_ibp/acceptance.hpp"
#include "exit_ibp/chain.hpp"
#include "exit_ibp/config.hpp"
#include "exit_ibp/estimators.hpp"
#include "exit_ibp/experiment.hpp"
#include "exit_ibp/quadrature.hpp"

struct eibp_experiment {
  exit_ibp::ExperimentConfig config;
  std::optional<exit_ibp::ExperimentResult> result;
  std::string summary;
};

namespace {

thread_local std::string last_error;

int fail(int code, const std::string& message) {
  last_error = message;
  return code;
}

// Maps the exception in flight to a status code.
int translate() {
  try {
    throw;
  } catch (const exit_ibp::ConfigError& e) {
    return fail(EIBP_CONFIG_ERROR, e.what());
  } catch (const exit_ibp::EstimatorFault& e) {
    return fail(EIBP_RUNTIME_ERROR, e.what());
  } catch (const exit_ibp::DegeneratePathError& e) {
    return fail(EIBP_RUNTIME_ERROR, e.what());
  } catch (const exit_ibp::QuadratureError& e) {
    return fail(EIBP_RUNTIME_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EIBP_CONFIG_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EIBP_RUNTIME_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(EIBP_RUNTIME_ERROR, e.what());
  } catch (...) {
    return fail(EIBP_RUNTIME_ERROR, "unknown error");
  }
}

int make(exit_ibp::ExperimentConfig config, eibp_experiment** out) {
  *out = new eibp_experiment{std::move(config), std::nullopt, {}};
  last_error.clear();
  return EIBP_OK;
}

}  // namespace

extern "C" {

const char* eibp_version(void) { return "0.1.0"; }

const char* eibp_last_error(void) { return last_error.c_str(); }

int eibp_experiment_from_json(const char* json_text, eibp_experiment** out) {
  if (!json_text || !out) return fail(EIBP_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    return make(exit_ibp::parse_config(json_text), out);
  } catch (...) {
    return translate();
  }
}

int eibp_experiment_from_file(const char* path, eibp_experiment** out) {
  if (!path || !out) return fail(EIBP_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    return make(exit_ibp::load_config(path), out);
  } catch (...) {
    return translate();
  }
}

void eibp_experiment_free(eibp_experiment* experiment) { delete experiment; }

int eibp_experiment_run(eibp_experiment* experiment, eibp_result* out) {
  if (!experiment) return fail(EIBP_INVALID_ARGUMENT, "null experiment");
  try {
    experiment->result = exit_ibp::run_experiment(experiment->config);
    experiment->summary = exit_ibp::format_summary(*experiment->result);
    if (out) {
      const auto& r = *experiment->result;
      *out = eibp_result{};
      out->mean = r.stats.mean;
      out->std_error = r.stats.stderr_of_mean();
      out->ci99_lo = r.stats.ci99_lo();
      out->ci99_hi = r.stats.ci99_hi();
      out->excess_kurtosis = r.stats.excess_kurtosis();
      out->seconds = r.seconds;
      out->count = r.stats.count;
      out->abort_count = r.stats.abort_count;
      out->has_median_of_means = r.median_of_means.has_value();
      out->median_of_means = r.median_of_means.value_or(0.0);
      out->has_bias_band = r.bias_band.has_value();
      out->bias_band = r.bias_band.value_or(0.0);
    }
    last_error.clear();
    return EIBP_OK;
  } catch (...) {
    experiment->result.reset();
    return translate();
  }
}

int eibp_experiment_save(const eibp_experiment* experiment, const char* path) {
  if (!experiment) return fail(EIBP_INVALID_ARGUMENT, "null experiment");
  if (!experiment->result) return fail(EIBP_INVALID_ARGUMENT, "experiment has not been run");
  try {
    const std::optional<std::string> target = path ? std::optional<std::string>(path) : experiment->config.output_csv;
    if (target) exit_ibp::append_csv(*target, *experiment->result);
    if (experiment->config.dump_paths) exit_ibp::write_path_dump(*experiment->config.dump_paths, *experiment->result);
    last_error.clear();
    return EIBP_OK;
  } catch (...) {
    return translate();
  }
}

const char* eibp_experiment_summary(const eibp_experiment* experiment) {
  return experiment ? experiment->summary.c_str() : "";
}

int eibp_validate(const char* suite, eibp_criterion_callback callback, void* user) {
  if (!suite) return fail(EIBP_INVALID_ARGUMENT, "null suite");
  const std::string name(suite);
  exit_ibp::AcceptanceBudget budget;
  if (name == "smoke") {
    budget = exit_ibp::smoke_budget();
  } else if (name == "full") {
    budget = exit_ibp::full_budget();
  } else {
    return fail(EIBP_CONFIG_ERROR, "unknown suite '" + name + "' (expected smoke or full)");
  }
  try {
    budget.workers = exit_ibp::ExperimentConfig{}.resolved_workers();
    std::string first_failure;
    exit_ibp::run_acceptance(budget, [&](const exit_ibp::CriterionResult& r) {
      if (!r.passed && first_failure.empty()) first_failure = std::to_string(r.id) + " " + r.name;
      if (callback) {
        const std::string line = exit_ibp::format_criterion(r);
        callback(r.id, r.name.c_str(), r.passed ? 1 : 0, line.c_str(), user);
      }
    });
    if (!first_failure.empty()) return fail(EIBP_VALIDATION_FAILED, "criterion " + first_failure + " failed");
    last_error.clear();
    return EIBP_OK;
  } catch (...) {
    return translate();
  }
}

}  // extern "C"
