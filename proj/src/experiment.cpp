#include "exit_ibp/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "exit_ibp/chain.hpp"
#include "exit_ibp/engine.hpp"
#include "exit_ibp/estimators.hpp"
#include "exit_ibp/model.hpp"
#include "exit_ibp/oracle.hpp"
#include "exit_ibp/test_functions.hpp"
#include "exit_ibp/weights.hpp"

namespace exit_ibp {

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

QuadratureTarget quadrature_target(const std::string& name) {
  if (name == "functional") return QuadratureTarget::StoppedFunctional;
  if (name == "hit_only") return QuadratureTarget::HitOnly;
  if (name == "derivative") return QuadratureTarget::Derivative;
  if (name == "derivative_with_atom") return QuadratureTarget::DerivativeWithAtom;
  throw std::invalid_argument("unknown quadrature target '" + name + "'");
}

EstimatorKind estimator_kind(EstimatorChoice c) {
  switch (c) {
    case EstimatorChoice::Representation:
      return EstimatorKind::Representation;
    case EstimatorChoice::TimeFunctional:
      return EstimatorKind::TimeFunctional;
    default:
      return EstimatorKind::Derivative;
  }
}

void run_chain_estimator(const ExperimentConfig& config, const DiffusionModel& model, const TestFunction& f,
                         ExperimentResult& result) {
  const EstimatorKind kind = estimator_kind(config.estimator);
  if (kind == EstimatorKind::TimeFunctional && f.kind != TestFunction::Kind::TimeOnly) {
    throw std::invalid_argument("time_functional needs a time-only test function");
  }
  const double lambda = config.lambda_value();
  const int n_max = config.n_max;
  const Scheme scheme = config.scheme;

  KernelFactory factory = [&, lambda, n_max, scheme, kind]() -> PathKernel {
    auto path = std::make_shared<ChainPath>();
    auto weights = std::make_shared<WeightSet>();
    return [&, path, weights, lambda, n_max, scheme, kind](RngStream& rng, std::span<double> out,
                                                            std::string* dump) {
      const bool ok = scheme == Scheme::Gaussian ? sample_chain_gaussian(rng, model, lambda, n_max, *path)
                                                 : sample_chain_gig(rng, model, lambda, n_max, *path);
      if (!ok) return false;
      assemble_weights(*path, model, lambda, *weights);
      switch (kind) {
        case EstimatorKind::Representation:
          out[0] = representation_contribution(*path, *weights, f, model, lambda, rng);
          break;
        case EstimatorKind::TimeFunctional:
          out[0] = time_functional_contribution(*path, *weights, f, model, lambda);
          break;
        case EstimatorKind::Derivative:
          out[0] = derivative_contribution(*path, *weights, f, model, lambda);
          break;
      }
      if (dump) {
        *dump += path_dump_row(*path);
        *dump += '\n';
      }
      return true;
    };
  };

  EngineOptions engine;
  engine.n_samples = config.n_samples;
  engine.chunk_size = config.chunk_size;
  engine.seed = config.seed;
  engine.workers = config.resolved_workers();
  engine.collect_dump = config.dump_paths.has_value();
  EngineOutput run = run_chunked(engine, 1, factory);

  result.stats = run.totals[0];
  result.seconds = run.seconds;
  result.path_dump = std::move(run.dump);
  if (config.median_of_means_blocks) {
    std::vector<McStatistics> parts;
    parts.reserve(run.chunks.size());
    for (const auto& c : run.chunks) parts.push_back(c[0]);
    result.median_of_means = median_of_means(parts, *config.median_of_means_blocks);
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ExitProblem problem{config.L, config.x0, config.T};
  const DiffusionModel model = DiffusionModel::from_preset(config.model_preset.name, config.model_preset.params, problem);
  const TestFunction f = make_test_function(config.f_preset.name, config.f_preset.params, config.T);
  const ValidationReport report = validate_assumptions(model);
  if (!report.passed) throw std::invalid_argument("model assumptions violated: " + report.diagnostic);

  ExperimentResult result;
  result.experiment_id = config.experiment_id;
  result.estimator = to_string(config.estimator);
  result.model_preset = Preset{model.name(), model.params()}.label();
  result.f_preset = config.f_preset.label();
  result.lambda = config.lambda_value();
  result.T = config.T;
  result.x0 = config.x0;
  result.L = config.L;
  result.n_samples = config.n_samples;

  switch (config.estimator) {
    case EstimatorChoice::OracleQuadrature: {
      const auto started = std::chrono::steady_clock::now();
      const double v = functional_by_quadrature(model, f, quadrature_target(config.oracle_target));
      result.estimator += ":" + config.oracle_target;
      result.stats.add(v);
      result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      break;
    }
    case EstimatorChoice::OracleEuler: {
      EngineOptions engine;
      engine.n_samples = config.n_samples;
      engine.chunk_size = config.chunk_size;
      engine.seed = config.seed;
      engine.workers = config.resolved_workers();
      const EulerMode mode = config.oracle_target == "derivative" ? EulerMode::Derivative : EulerMode::Functional;
      if (mode == EulerMode::Derivative && !f.differentiable()) {
        throw std::invalid_argument("oracle_euler derivative target needs a differentiable f");
      }
      const EulerBridgeResult r =
          euler_bridge_run(model, f, EulerOptions{config.euler_steps, config.euler_coarse_factor}, engine);
      result.estimator += ":" + config.oracle_target;
      result.stats = r.fine(mode);
      result.bias_band = r.bias_band(mode);
      result.seconds = r.seconds;
      break;
    }
    default:
      run_chain_estimator(config, model, f, result);
      break;
  }
  return result;
}

std::string csv_header() {
  return "experiment_id,estimator,model_preset,f_preset,lambda,T,x0,L,n_samples,mean,stderr,ci99_lo,ci99_hi,"
         "kurtosis,abort_count,seconds";
}

std::string csv_row(const ExperimentResult& r) {
  std::string row;
  auto add = [&row](const std::string& field) {
    if (!row.empty()) row += ',';
    row += quote(field);
  };
  add(r.experiment_id);
  add(r.estimator);
  add(r.model_preset);
  add(r.f_preset);
  add(format_real(r.lambda));
  add(format_real(r.T));
  add(format_real(r.x0));
  add(format_real(r.L));
  add(std::to_string(r.n_samples));
  add(format_real(r.stats.mean));
  add(format_real(r.stats.stderr_of_mean()));
  add(format_real(r.stats.ci99_lo()));
  add(format_real(r.stats.ci99_hi()));
  add(format_real(r.stats.excess_kurtosis()));
  add(std::to_string(r.stats.abort_count));
  add(format_real(r.seconds));
  return row;
}

void append_csv(const std::string& path, const ExperimentResult& result) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for appending");
  if (fresh) out << csv_header() << '\n';
  out << csv_row(result) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_path_dump(const std::string& path, const ExperimentResult& result) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << path_dump_header() << '\n' << result.path_dump;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string format_summary(const ExperimentResult& r) {
  std::ostringstream os;
  os.precision(8);
  os << r.experiment_id << " [" << r.estimator << "] model=" << r.model_preset << " f=" << r.f_preset << '\n';
  os << "  mean      " << r.stats.mean << " +/- " << r.stats.stderr_of_mean() << '\n';
  os << "  ci99      [" << r.stats.ci99_lo() << ", " << r.stats.ci99_hi() << "]\n";
  os << "  kurtosis  " << r.stats.excess_kurtosis() << '\n';
  os << "  samples   " << r.stats.count << " (aborted " << r.stats.abort_count << ")\n";
  if (r.median_of_means) os << "  median-of-means " << *r.median_of_means << '\n';
  if (r.bias_band) os << "  bias band " << *r.bias_band << '\n';
  os << "  seconds   " << r.seconds << '\n';
  return os.str();
}

}  // namespace exit_ibp
