#include "exit_ibp/estimators.hpp"

#include <cmath>

#include "exit_ibp/distributions.hpp"

namespace exit_ibp {

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Representation:
      return "representation";
    case EstimatorKind::TimeFunctional:
      return "time_functional";
    case EstimatorKind::Derivative:
      return "derivative";
  }
  return "unknown";
}

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EstimatorFault(std::string(what) + ": non-finite per-path value");
  return v;
}

}  // namespace

double representation_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                                   const DiffusionModel& model, double lambda_poisson, RngStream& rng) {
  const double T = model.T();
  const double L = model.L();
  const double zeta_n = path.last_jump_time();
  const double x_n = path.last_state();

  double value = 0.0;
  if (path.hit_before_T) value += f(zeta_n + path.tau_bar, L) * (w.gamma + w.gamma_bar);

  const int rho = rng.bit() ? 1 : 0;
  const double anchor = rho ? x_n : 2.0 * L - x_n;
  const double x_last = anchor + model.sigma(x_n) * normal_sample(rng, 0.0, T - zeta_n);
  if (x_last >= L && w.gamma != 0.0) value += 2.0 * (2 * rho - 1) * f(T, x_last) * w.gamma;

  return checked(std::exp(lambda_poisson * T) * value, "representation");
}

double time_functional_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                                    const DiffusionModel& model, double lambda_poisson) {
  const double T = model.T();
  double value = 0.0;
  if (path.hit_before_T) {
    value = std::exp(lambda_poisson * T) * f.shifted(path.last_jump_time() + path.tau_bar) * w.theta_hat * w.gamma;
  }
  return checked(value + f.f_at_T, "time_functional");
}

double derivative_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                               const DiffusionModel& model, double lambda_poisson) {
  if (!path.hit_before_T) return 0.0;
  const double g = f.shifted(path.last_jump_time() + path.tau_bar);
  if (g == 0.0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i <= path.n; ++i) sum += path.delta_sq[i] * w.theta_I[i];
  return checked(std::exp(lambda_poisson * model.T()) * g * sum / w.M, "derivative");
}

}  // namespace exit_ibp
