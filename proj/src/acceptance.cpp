#include "exit_ibp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "exit_ibp/chain.hpp"
#include "exit_ibp/config.hpp"
#include "exit_ibp/distributions.hpp"
#include "exit_ibp/experiment.hpp"
#include "exit_ibp/identities.hpp"
#include "exit_ibp/oracle.hpp"
#include "exit_ibp/quadrature.hpp"
#include "exit_ibp/statistics.hpp"
#include "exit_ibp/test_functions.hpp"
#include "exit_ibp/weights.hpp"

namespace exit_ibp {

namespace {

// P(tau <= 1) for c = 1, i.e. 2 Phi(-1).
constexpr double kLevyCdf = 0.31731050786291415;
// int_0^1 f'(s) p(s) ds for f = cos(pi s / 2), c = 1.
constexpr double kCosineDerivative = -0.340076077758348;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

ExperimentConfig base_config(const AcceptanceBudget& budget, const std::string& id) {
  ExperimentConfig c;
  c.experiment_id = id;
  c.model_preset = Preset{"constant", {{"b", 0.0}, {"a", 1.0}}};
  c.lambda = 1.0;
  c.T = 1.0;
  c.x0 = 1.0;
  c.L = 0.0;
  c.seed = budget.seed;
  c.workers = budget.workers;
  return c;
}

std::string estimate_text(const McStatistics& s) {
  return fmt("%.6f +/- %.6f", s.mean, s.stderr_of_mean());
}

CriterionResult within_se(int id, std::string name, const ExperimentResult& r, double target, double max_seconds) {
  CriterionResult c;
  c.id = id;
  c.name = std::move(name);
  const double se = r.stats.stderr_of_mean();
  const double err = std::abs(r.stats.mean - target);
  const bool fast = r.seconds < max_seconds;
  c.passed = err <= 3.0 * se && fast;
  c.detail = fmt("estimate %s, target %.6f, |error| = %.2f SE (limit 3), aborts %lld, %.1f s (target < %.0f s)",
                 estimate_text(r.stats).c_str(), target, se > 0 ? err / se : INFINITY,
                 static_cast<long long>(r.stats.abort_count), r.seconds, max_seconds);
  return c;
}

CriterionResult criterion_cdf(const AcceptanceBudget& b) {
  ExperimentConfig c = base_config(b, "acceptance-1");
  c.estimator = EstimatorChoice::Representation;
  c.f_preset = Preset{"indicator_before_T", {}};
  c.n_samples = b.cdf_paths;
  return within_se(1, "constant-coefficient CDF (representation)", run_experiment(c), kLevyCdf, 60.0);
}

CriterionResult criterion_derivative_constant(const AcceptanceBudget& b) {
  ExperimentConfig c = base_config(b, "acceptance-2");
  c.estimator = EstimatorChoice::Derivative;
  c.scheme = Scheme::GigTime;
  c.f_preset = Preset{"linear_shifted", {}};
  c.n_samples = b.derivative_paths;
  return within_se(2, "derivative estimator, constant case, f' = 1 (GIG-time scheme)", run_experiment(c), kLevyCdf,
                   120.0);
}

CriterionResult criterion_derivative_smooth(const AcceptanceBudget& b) {
  const DiffusionModel model = DiffusionModel::constant(0.0, 1.0, ExitProblem{0.0, 1.0, 1.0});
  const TestFunction f = make_test_function("cosine", {}, 1.0);
  const double quad = functional_by_quadrature(model, f, QuadratureTarget::Derivative);

  ExperimentConfig c = base_config(b, "acceptance-3");
  c.estimator = EstimatorChoice::Derivative;
  c.f_preset = Preset{"cosine", {}};
  c.n_samples = b.derivative_paths;
  CriterionResult r = within_se(3, "derivative estimator, f = cos(pi t / 2)", run_experiment(c), kCosineDerivative,
                                INFINITY);
  const bool quad_ok = std::abs(quad - kCosineDerivative) <= 1e-9;
  r.passed = r.passed && quad_ok;
  r.detail += fmt("; quadrature %.12f vs frozen %.12f", quad, kCosineDerivative);
  return r;
}

CriterionResult criterion_tanh(const AcceptanceBudget& b) {
  CriterionResult r;
  r.id = 4;
  r.name = "tanh model: time functional and derivative vs Euler-bridge oracle";
  const ExitProblem problem{0.0, 1.0, 1.0};
  const DiffusionModel model = DiffusionModel::from_preset("tanh", {}, problem);
  const TestFunction f = make_test_function("polynomial", {}, 1.0);

  EngineOptions engine;
  engine.n_samples = b.euler_paths;
  engine.seed = b.seed + 4;
  engine.workers = b.workers;
  const EulerBridgeResult oracle = euler_bridge_run(model, f, EulerOptions{b.euler_steps, 10}, engine);

  ExperimentConfig c = base_config(b, "acceptance-4");
  c.model_preset = Preset{"tanh", {}};
  c.f_preset = Preset{"polynomial", {}};
  c.n_samples = b.tanh_paths;
  c.estimator = EstimatorChoice::TimeFunctional;
  const ExperimentResult tf = run_experiment(c);
  c.estimator = EstimatorChoice::Derivative;
  const ExperimentResult dv = run_experiment(c);

  auto compare = [&](const char* label, const McStatistics& est, EulerMode mode, bool& ok) {
    const McStatistics& o = oracle.fine(mode);
    const double se = std::sqrt(est.stderr_of_mean() * est.stderr_of_mean() + o.stderr_of_mean() * o.stderr_of_mean());
    const double band = oracle.bias_band(mode);
    const double limit = 3.0 * se + band;
    const double err = std::abs(est.mean - o.mean);
    ok = err <= limit;
    return fmt("%s %s vs oracle %s, |diff| %.5f <= %.5f (3 SE %.5f + band %.5f): %s", label, estimate_text(est).c_str(),
               estimate_text(o).c_str(), err, limit, 3.0 * se, band, ok ? "ok" : "no");
  };
  bool ok_tf = false, ok_dv = false;
  r.detail = compare("time functional", tf.stats, EulerMode::Functional, ok_tf) + "; " +
             compare("derivative", dv.stats, EulerMode::Derivative, ok_dv) +
             fmt("; oracle %d steps, %.1f s", oracle.n_steps, oracle.seconds);
  r.passed = ok_tf && ok_dv;
  return r;
}

CriterionResult criterion_law(const AcceptanceBudget& b) {
  CriterionResult r;
  r.id = 5;
  r.name = "law equality of the Gaussian and GIG-time schemes (two-sample KS, 1%)";
  const DiffusionModel model = DiffusionModel::from_preset("tanh", {}, ExitProblem{0.0, 1.0, 1.0});
  const double lambda = 1.0;
  struct Sample {
    std::vector<double> n, zeta1, state1, state_last;
  } s[2];
  for (int scheme = 0; scheme < 2; ++scheme) {
    RngStream rng(b.seed + 5, static_cast<std::uint64_t>(scheme));
    ChainPath path;
    for (std::int64_t k = 0; k < b.law_paths; ++k) {
      const bool ok = scheme == 0 ? sample_chain_gaussian(rng, model, lambda, 60, path)
                                  : sample_chain_gig(rng, model, lambda, 60, path);
      if (!ok) continue;
      s[scheme].n.push_back(path.n);
      s[scheme].state_last.push_back(path.last_state());
      if (path.n >= 1) {
        s[scheme].zeta1.push_back(path.zeta[1]);
        s[scheme].state1.push_back(path.states[1]);
      }
    }
  }
  const char* labels[] = {"N_T", "zeta_1", "state_1", "state_N_T"};
  const std::vector<double> Sample::*fields[] = {&Sample::n, &Sample::zeta1, &Sample::state1, &Sample::state_last};
  r.passed = true;
  for (int k = 0; k < 4; ++k) {
    const auto& x = s[0].*fields[k];
    const auto& y = s[1].*fields[k];
    const double d = ks_two_sample_statistic(x, y);
    const double crit = ks_two_sample_critical_value(0.01, x.size(), y.size());
    r.passed = r.passed && d < crit;
    r.detail += fmt("%s%s D=%.5f crit=%.5f", k ? "; " : "", labels[k], d, crit);
  }
  return r;
}

CriterionResult criterion_identities(const AcceptanceBudget& b) {
  CriterionResult r;
  r.id = 6;
  r.name = "operator identities";
  r.passed = true;
  for (const auto& c : run_identity_checks(b.seed)) {
    r.passed = r.passed && c.passed;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += fmt("%s %.2e <= %.0e", c.name.c_str(), c.max_error, c.tolerance);
  }
  return r;
}

// GIG CDF at the sorted sample points by cumulative quadrature of the density.
double gig_ks_statistic(const GigParams& q, std::vector<double> x) {
  std::sort(x.begin(), x.end());
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.initial_panels = 2;
  auto density = [&](double t) { return gig_density(q, t); };
  const double n = static_cast<double>(x.size());
  double cdf = adaptive_simpson(density, 0.0, x[0], spec).value;
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0 && x[i] > x[i - 1]) cdf += adaptive_simpson(density, x[i - 1], x[i], spec).value;
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  return d;
}

CriterionResult criterion_gig(const AcceptanceBudget& b) {
  CriterionResult r;
  r.id = 7;
  r.name = "GIG sampler moments and KS";
  r.passed = true;
  const GigParams triples[] = {{2.0, 0.5, 0.5}, {1.0, 2.0, 0.5}, {4.0, 1.0, 0.5}};
  for (int k = 0; k < 3; ++k) {
    const GigParams& q = triples[k];
    RngStream rng(b.seed + 7, static_cast<std::uint64_t>(k));
    std::vector<double> x(b.gig_draws);
    McStatistics m, inv;
    for (auto& v : x) {
      v = gig_sample(rng, q);
      m.add(v);
      inv.add(1.0 / v);
    }
    const double m1 = gig_moment(q, 1), mi = gig_inverse_moment(q, 1);
    const double z1 = std::abs(m.mean - m1) / m.stderr_of_mean();
    const double zi = std::abs(inv.mean - mi) / inv.stderr_of_mean();
    const double d = gig_ks_statistic(q, x);
    const double crit = ks_critical_value(0.01, x.size());
    const bool ok = z1 <= 5.0 && zi <= 5.0 && d < crit;
    r.passed = r.passed && ok;
    r.detail += fmt("%s(a=%g,b=%g): mean %.2f SE, E[1/X] %.2f SE, KS %.5f < %.5f", k ? "; " : "", q.a, q.b, z1, zi, d,
                    crit);
  }
  return r;
}

bool same_bits(const McStatistics& x, const McStatistics& y) {
  return x.count == y.count && x.abort_count == y.abort_count && x.mean == y.mean && x.m2 == y.m2 && x.m3 == y.m3 &&
         x.m4 == y.m4 && x.min == y.min && x.max == y.max;
}

CriterionResult criterion_structure(const AcceptanceBudget& b) {
  CriterionResult r;
  r.id = 8;
  r.name = "structural path properties and determinism";
  const ExitProblem problem{0.0, 1.0, 1.0};
  const DiffusionModel models[] = {DiffusionModel::constant(0.0, 1.0, problem),
                                   DiffusionModel::from_preset("tanh", {}, problem)};
  std::int64_t checked = 0, geometric_fail = 0, m_fail = 0, theta_fail = 0;
  for (int mi = 0; mi < 2; ++mi) {
    for (int scheme = 0; scheme < 2; ++scheme) {
      RngStream rng(b.seed + 8, static_cast<std::uint64_t>(2 * mi + scheme));
      ChainPath path;
      WeightSet w;
      for (std::int64_t k = 0; k < b.structural_paths / 4; ++k) {
        const bool ok = scheme == 0 ? sample_chain_gaussian(rng, models[mi], 1.0, 60, path)
                                    : sample_chain_gig(rng, models[mi], 1.0, 60, path);
        if (!ok) continue;
        ++checked;
        if (path.survived && !geometric_inequality_holds(path, problem.x0, problem.L)) ++geometric_fail;
        try {
          assemble_weights(path, models[mi], 1.0, w);
          if (!(w.M > 0.0)) ++m_fail;
        } catch (const DegeneratePathError&) {
          ++m_fail;
          continue;
        }
        if (mi == 0) {
          bool zero = w.theta_hat == 1.0 && w.gamma == (path.n == 0 ? 1.0 : 0.0);
          for (double t : w.theta) zero = zero && t == 0.0;
          if (path.n >= 1) {
            for (double t : w.theta_I) zero = zero && t == 0.0;
          }
          if (!zero) ++theta_fail;
        }
      }
    }
  }

  ExperimentConfig c = base_config(b, "acceptance-8");
  c.model_preset = Preset{"tanh", {}};
  c.f_preset = Preset{"polynomial", {}};
  c.estimator = EstimatorChoice::Derivative;
  c.n_samples = b.structural_paths / 4;
  c.chunk_size = 1024;
  c.workers = 1;
  const ExperimentResult one = run_experiment(c);
  const ExperimentResult again = run_experiment(c);
  c.workers = 3;
  const ExperimentResult three = run_experiment(c);
  c.estimator = EstimatorChoice::Representation;
  c.workers = 1;
  const ExperimentResult rep_one = run_experiment(c);
  c.workers = 4;
  const ExperimentResult rep_four = run_experiment(c);
  const bool deterministic =
      same_bits(one.stats, again.stats) && same_bits(one.stats, three.stats) && same_bits(rep_one.stats, rep_four.stats);

  r.passed = geometric_fail == 0 && m_fail == 0 && theta_fail == 0 && deterministic;
  r.detail = fmt("%lld paths: geometric inequality failures %lld, M <= 0 %lld, nonzero constant-model weights %lld; "
                 "results across worker counts and reruns %s",
                 static_cast<long long>(checked), static_cast<long long>(geometric_fail),
                 static_cast<long long>(m_fail), static_cast<long long>(theta_fail),
                 deterministic ? "bit-identical" : "DIFFER");
  return r;
}

}  // namespace

AcceptanceBudget full_budget() {
  AcceptanceBudget b;
  b.name = "full";
  return b;
}

AcceptanceBudget smoke_budget() {
  AcceptanceBudget b;
  b.name = "smoke";
  b.cdf_paths = 100000;
  b.derivative_paths = 100000;
  b.tanh_paths = 200000;
  b.euler_paths = 20000;
  b.euler_steps = 1000;
  b.law_paths = 20000;
  b.gig_draws = 20000;
  b.structural_paths = 40000;
  return b;
}

std::string format_criterion(const CriterionResult& r) {
  return fmt("[%s] %d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) + r.detail;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceBudget& budget,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  using Runner = CriterionResult (*)(const AcceptanceBudget&);
  const std::pair<const char*, Runner> criteria[] = {
      {"constant-coefficient CDF (representation)", criterion_cdf},
      {"derivative estimator, constant case", criterion_derivative_constant},
      {"derivative estimator, smooth f", criterion_derivative_smooth},
      {"tanh model vs Euler-bridge oracle", criterion_tanh},
      {"law equality of the two schemes", criterion_law},
      {"operator identities", criterion_identities},
      {"GIG sampler", criterion_gig},
      {"structural path properties and determinism", criterion_structure},
  };
  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    const auto started = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = run(budget);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = name;
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace exit_ibp
