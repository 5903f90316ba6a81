#include "exit_ibp/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "exit_ibp/engine.hpp"
#include "exit_ibp/model.hpp"
#include "exit_ibp/test_functions.hpp"
#include "json.hpp"

namespace exit_ibp {

using nlohmann::json;

const char* to_string(EstimatorChoice choice) {
  switch (choice) {
    case EstimatorChoice::Representation:
      return "representation";
    case EstimatorChoice::TimeFunctional:
      return "time_functional";
    case EstimatorChoice::Derivative:
      return "derivative";
    case EstimatorChoice::OracleQuadrature:
      return "oracle_quadrature";
    case EstimatorChoice::OracleEuler:
      return "oracle_euler";
  }
  return "unknown";
}

std::string Preset::label() const {
  if (params.empty()) return name;
  std::ostringstream os;
  os.precision(17);
  os << name << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

int ExperimentConfig::resolved_workers() const {
  if (const char* env = std::getenv("EXIT_IBP_THREADS"); env && *env) {
    const std::string v(env);
    if (v == "auto") return auto_worker_count();
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError("EXIT_IBP_THREADS: expected a positive integer or \"auto\"");
    return static_cast<int>(n);
  }
  return workers ? *workers : auto_worker_count();
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("config field '" + field + "': " + message);
}

const json& required(const json& doc, const std::string& field) {
  const auto it = doc.find(field);
  if (it == doc.end()) fail(field, "missing required field");
  return *it;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

Preset get_preset(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object with 'name' and optional 'params'");
  Preset p;
  for (const auto& [key, value] : v.items()) {
    if (key == "name") {
      p.name = get_string(value, field + ".name");
    } else if (key == "params") {
      if (!value.is_object()) fail(field + ".params", "expected an object of numbers");
      for (const auto& [pk, pv] : value.items()) p.params[pk] = get_number(pv, field + ".params." + pk);
    } else {
      fail(field + "." + key, "unknown key");
    }
  }
  if (p.name.empty()) fail(field + ".name", "missing required field");
  return p;
}

EstimatorChoice get_estimator(const json& v) {
  const std::string s = get_string(v, "estimator");
  if (s == "representation") return EstimatorChoice::Representation;
  if (s == "time_functional") return EstimatorChoice::TimeFunctional;
  if (s == "derivative") return EstimatorChoice::Derivative;
  if (s == "oracle_quadrature") return EstimatorChoice::OracleQuadrature;
  if (s == "oracle_euler") return EstimatorChoice::OracleEuler;
  fail("estimator", "unknown estimator '" + s +
                        "' (expected representation, time_functional, derivative, oracle_quadrature, oracle_euler)");
}

const std::set<std::string> kKnownKeys = {
    "experiment_id", "estimator", "model_preset", "f_preset", "lambda", "T", "x0", "L", "n_samples",
    "chunk_size", "seed", "workers", "n_max", "median_of_means_blocks", "output_csv", "dump_paths",
    "scheme", "oracle_target", "euler_steps", "euler_coarse_factor"};

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    const auto upto = json_text.substr(0, std::min<std::size_t>(e.byte, json_text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", byte " + std::to_string(e.byte) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.count(key)) fail(key, "unknown key");
  }

  ExperimentConfig c;
  c.experiment_id = get_string(required(doc, "experiment_id"), "experiment_id");
  c.estimator = get_estimator(required(doc, "estimator"));
  c.model_preset = get_preset(required(doc, "model_preset"), "model_preset");
  c.f_preset = get_preset(required(doc, "f_preset"), "f_preset");
  c.T = get_number(required(doc, "T"), "T");
  c.x0 = get_number(required(doc, "x0"), "x0");
  c.L = get_number(required(doc, "L"), "L");
  c.n_samples = get_integer(required(doc, "n_samples"), "n_samples");
  const json& seed = required(doc, "seed");
  if (seed.is_number_unsigned()) {
    c.seed = seed.get<std::uint64_t>();
  } else {
    fail("seed", "expected a non-negative 64-bit integer");
  }

  if (!(c.T > 0.0)) fail("T", "must be positive");
  if (!(c.x0 > c.L)) fail("x0", "must exceed L");
  if (c.n_samples < 1) fail("n_samples", "must be at least 1");

  if (auto it = doc.find("lambda"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "default") fail("lambda", "expected a positive number or \"default\"");
    } else {
      c.lambda = get_number(*it, "lambda");
      if (!(*c.lambda > 0.0)) fail("lambda", "must be positive");
    }
  }
  if (auto it = doc.find("chunk_size"); it != doc.end()) {
    c.chunk_size = get_integer(*it, "chunk_size");
    if (c.chunk_size < 1) fail("chunk_size", "must be at least 1");
  }
  if (auto it = doc.find("workers"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "auto") fail("workers", "expected a positive integer or \"auto\"");
    } else {
      const auto w = get_integer(*it, "workers");
      if (w < 1 || w > 4096) fail("workers", "must be between 1 and 4096");
      c.workers = static_cast<int>(w);
    }
  } else {
    c.workers = 1;
  }
  if (auto it = doc.find("n_max"); it != doc.end()) {
    const auto n = get_integer(*it, "n_max");
    if (n < 0 || n > 1000000) fail("n_max", "must be between 0 and 1000000");
    c.n_max = static_cast<int>(n);
  }
  if (auto it = doc.find("median_of_means_blocks"); it != doc.end() && !it->is_null()) {
    const auto b = get_integer(*it, "median_of_means_blocks");
    if (b < 1) fail("median_of_means_blocks", "must be at least 1");
    const auto chunks = (c.n_samples + c.chunk_size - 1) / c.chunk_size;
    if (b > chunks) fail("median_of_means_blocks", "exceeds the number of chunks (" + std::to_string(chunks) + ")");
    c.median_of_means_blocks = static_cast<int>(b);
  }
  if (auto it = doc.find("output_csv"); it != doc.end()) c.output_csv = get_string(*it, "output_csv");
  if (auto it = doc.find("dump_paths"); it != doc.end() && !it->is_null()) {
    c.dump_paths = get_string(*it, "dump_paths");
  }
  if (auto it = doc.find("scheme"); it != doc.end()) {
    const std::string s = get_string(*it, "scheme");
    if (s == "gaussian") {
      c.scheme = Scheme::Gaussian;
    } else if (s == "gig_time") {
      c.scheme = Scheme::GigTime;
    } else {
      fail("scheme", "expected \"gaussian\" or \"gig_time\"");
    }
  }
  if (auto it = doc.find("oracle_target"); it != doc.end()) {
    c.oracle_target = get_string(*it, "oracle_target");
  }
  const bool quad_target = c.oracle_target == "functional" || c.oracle_target == "hit_only" ||
                           c.oracle_target == "derivative" || c.oracle_target == "derivative_with_atom";
  const bool euler_target = c.oracle_target == "functional" || c.oracle_target == "derivative";
  if ((c.estimator == EstimatorChoice::OracleQuadrature && !quad_target) ||
      (c.estimator == EstimatorChoice::OracleEuler && !euler_target) || !quad_target) {
    fail("oracle_target", "unsupported target '" + c.oracle_target + "' for estimator " + to_string(c.estimator));
  }
  if (auto it = doc.find("euler_steps"); it != doc.end()) {
    const auto n = get_integer(*it, "euler_steps");
    if (n < 1 || n > 100000000) fail("euler_steps", "must be between 1 and 1e8");
    c.euler_steps = static_cast<int>(n);
  }
  if (auto it = doc.find("euler_coarse_factor"); it != doc.end()) {
    const auto n = get_integer(*it, "euler_coarse_factor");
    if (n < 1) fail("euler_coarse_factor", "must be at least 1");
    c.euler_coarse_factor = static_cast<int>(n);
  }
  if (c.euler_steps % c.euler_coarse_factor != 0) fail("euler_coarse_factor", "must divide euler_steps");

  try {
    DiffusionModel::from_preset(c.model_preset.name, c.model_preset.params, ExitProblem{c.L, c.x0, c.T});
  } catch (const std::invalid_argument& e) {
    fail("model_preset", e.what());
  }
  try {
    make_test_function(c.f_preset.name, c.f_preset.params, c.T);
  } catch (const std::invalid_argument& e) {
    fail("f_preset", e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace exit_ibp
