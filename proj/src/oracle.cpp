#include "exit_ibp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exit_ibp/distributions.hpp"
#include "exit_ibp/special.hpp"

namespace exit_ibp {

namespace {

// exp(-38) is below the smallest uniform the generator returns, so a kill
// test with a larger exponent can never fire and is skipped.
constexpr double kKillExponentCutoff = 38.0;

void require_constant(const DiffusionModel& model, const char* what) {
  if (!model.has_constant_coefficients()) {
    throw std::invalid_argument(std::string(what) + " needs a model with constant coefficients");
  }
}

struct EulerPath {
  double x;
  double t = 0.0;
  bool alive = true;
  double hit_time = 0.0;
};

// One Euler step of size dt with Brownian increment dw, then the crossing
// and bridge-kill tests.
void euler_step(const DiffusionModel& model, EulerPath& p, double dt, double dw, RngStream& rng) {
  const double L = model.L();
  const Coefficients c = model.at(p.x);
  const double next = p.x + c.b * dt + c.sigma * dw;
  bool killed = !(next > L);
  if (!killed) {
    const double exponent = 2.0 * (p.x - L) * (next - L) / (c.a * dt);
    if (exponent < kKillExponentCutoff) killed = rng.uniform() < std::exp(-exponent);
  }
  if (killed) {
    p.alive = false;
    p.hit_time = p.t + 0.5 * dt;
  } else {
    p.x = next;
    p.t += dt;
  }
}

double path_functional(const TestFunction& f, const EulerPath& p, double T, double L) {
  return p.alive ? f(T, p.x) : f(p.hit_time, L);
}

double path_derivative(const TestFunction& f, const EulerPath& p) {
  return (!p.alive && f.differentiable()) ? f.eval_dt(p.hit_time) : 0.0;
}

}  // namespace

double levy_hitting_density(const DiffusionModel& model, double s) {
  if (!model.is_brownian()) throw std::invalid_argument("levy_hitting_density needs b = 0 and constant a");
  if (!(s > 0.0)) return 0.0;
  const double c = (model.x0() - model.L()) / model.sigma(model.x0());
  return levy_density(c, s);
}

double drifted_hitting_density(const DiffusionModel& model, double s) {
  require_constant(model, "drifted_hitting_density");
  if (!(s > 0.0)) return 0.0;
  const Coefficients c = model.at(model.x0());
  const double d = model.x0() - model.L();
  const double m = d + c.b * s;
  return d / (c.sigma * std::sqrt(2.0 * std::numbers::pi * s * s * s)) * std::exp(-m * m / (2.0 * c.a * s));
}

double killed_transition_density(const DiffusionModel& model, double y) {
  require_constant(model, "killed_transition_density");
  const double L = model.L();
  if (!(y > L)) return 0.0;
  const Coefficients c = model.at(model.x0());
  const double x = model.x0();
  const double T = model.T();
  const double var = c.a * T;
  // The Girsanov factor goes inside the exponentials so that far tails give 0
  // rather than inf * 0.
  const double log_girsanov = c.b * (y - x) / c.a - c.b * c.b * T / (2.0 * c.a);
  const double direct = y - x;
  const double mirror = y - (2.0 * L - x);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * var);
  return norm * (std::exp(log_girsanov - direct * direct / (2.0 * var)) -
                 std::exp(log_girsanov - mirror * mirror / (2.0 * var)));
}

double functional_by_quadrature(const DiffusionModel& model, const TestFunction& f, QuadratureTarget target,
                                const QuadratureSpec& spec) {
  require_constant(model, "functional_by_quadrature");
  const double T = model.T();
  const double L = model.L();
  auto density = [&](double s) { return drifted_hitting_density(model, s); };
  // tau = T has probability zero, so f(., L) is taken as its left limit at T;
  // this keeps payoffs such as 1{t < T} continuous on the integration range.
  const double t_left = std::nextafter(T, 0.0);
  auto hit_payoff = [&](double s) { return f(std::min(s, t_left), L) * density(s); };

  switch (target) {
    case QuadratureTarget::HitOnly:
      return adaptive_simpson(hit_payoff, 0.0, T, spec).value;
    case QuadratureTarget::StoppedFunctional: {
      const double hit = adaptive_simpson(hit_payoff, 0.0, T, spec).value;
      if (f.kind == TestFunction::Kind::TimeOnly) {
        const double p_hit = adaptive_simpson(density, 0.0, T, spec).value;
        return hit + f.f_at_T * (1.0 - p_hit);
      }
      const double survive =
          integrate_to_infinity([&](double y) { return f(T, y) * killed_transition_density(model, y); }, L, spec)
              .value;
      return hit + survive;
    }
    case QuadratureTarget::Derivative:
    case QuadratureTarget::DerivativeWithAtom: {
      if (!f.differentiable()) throw std::invalid_argument("derivative target needs a differentiable f");
      double v = adaptive_simpson([&](double s) { return f.eval_dt(s) * density(s); }, 0.0, T, spec).value;
      if (target == QuadratureTarget::DerivativeWithAtom) {
        v += f.eval_dt(T) * (1.0 - adaptive_simpson(density, 0.0, T, spec).value);
      }
      return v;
    }
  }
  throw std::invalid_argument("unknown quadrature target");
}

const McStatistics& EulerBridgeResult::fine(EulerMode mode) const {
  return mode == EulerMode::Functional ? functional : derivative;
}

double EulerBridgeResult::bias_band(EulerMode mode) const {
  if (coarse_factor <= 1) return 0.0;
  return std::abs((mode == EulerMode::Functional ? diff_functional : diff_derivative).mean);
}

EulerBridgeResult euler_bridge_run(const DiffusionModel& model, const TestFunction& f, const EulerOptions& options,
                                   const EngineOptions& engine) {
  if (options.n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
  if (options.coarse_factor < 1 || options.n_steps % options.coarse_factor != 0) {
    throw std::invalid_argument("coarse_factor must divide n_steps");
  }
  const double T = model.T();
  const double L = model.L();
  const int n_steps = options.n_steps;
  const int factor = options.coarse_factor;
  const bool coupled = factor > 1;
  const double dt = T / n_steps;
  const double sqrt_dt = std::sqrt(dt);

  KernelFactory factory = [&]() -> PathKernel {
    return [&, n_steps, factor, coupled, dt, sqrt_dt](RngStream& rng, std::span<double> out, std::string*) {
      EulerPath fine{model.x0()};
      EulerPath coarse{model.x0()};
      coarse.alive = coupled;
      double block_noise = 0.0;
      for (int k = 0; k < n_steps; ++k) {
        const double dw = sqrt_dt * standard_normal(rng);
        if (fine.alive) euler_step(model, fine, dt, dw, rng);
        if (coarse.alive) {
          block_noise += dw;
          if ((k + 1) % factor == 0) {
            euler_step(model, coarse, factor * dt, block_noise, rng);
            block_noise = 0.0;
          }
        }
        if (!fine.alive && !coarse.alive) break;
      }
      out[0] = path_functional(f, fine, T, L);
      out[1] = path_derivative(f, fine);
      if (coupled) {
        // A coarse path that was never killed ends alive at T.
        out[2] = path_functional(f, coarse, T, L);
        out[3] = path_derivative(f, coarse);
      } else {
        out[2] = out[0];
        out[3] = out[1];
      }
      out[4] = out[0] - out[2];
      out[5] = out[1] - out[3];
      return true;
    };
  };

  EngineOptions opts = engine;
  opts.collect_dump = false;
  EngineOutput run = run_chunked(opts, 6, factory);

  EulerBridgeResult r;
  r.functional = run.totals[0];
  r.derivative = run.totals[1];
  r.coarse_functional = run.totals[2];
  r.coarse_derivative = run.totals[3];
  r.diff_functional = run.totals[4];
  r.diff_derivative = run.totals[5];
  r.n_steps = n_steps;
  r.coarse_factor = factor;
  r.seconds = run.seconds;
  return r;
}

McStatistics euler_bridge_estimate(const DiffusionModel& model, const TestFunction& f, EulerMode mode,
                                   std::int64_t n_paths, int n_steps, std::uint64_t seed, int workers) {
  EngineOptions engine;
  engine.n_samples = n_paths;
  engine.seed = seed;
  engine.workers = workers;
  const EulerBridgeResult r = euler_bridge_run(model, f, EulerOptions{n_steps, 1}, engine);
  return r.fine(mode);
}

}  // namespace exit_ibp
