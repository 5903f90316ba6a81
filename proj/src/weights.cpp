#include "exit_ibp/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace exit_ibp {

namespace {

/// theta_i and its jump-time derivative, from the Brownian increment z.
struct ThetaValue {
  double value = 0.0;
  double d_dtau = 0.0;
};

ThetaValue theta_from_increment(const Coefficients& prev, const Coefficients& cur, double L, double x_cur,
                                int rho, double dzeta, double z, double lambda_poisson) {
  if (!(x_cur > L)) return {};
  const double scale = 2.0 * (2 * rho - 1) / lambda_poisson;
  const double c1 = cur.b;
  const double c2 = 0.5 * (cur.a - prev.a);
  const double d_c2 = 0.5 * cur.a_prime;
  const double dd_c2 = 0.5 * cur.a_double_prime;
  const double d_c1 = cur.b_prime;

  const double i1 = canonical_integral(1, prev.a, prev.sigma, dzeta, z);
  const double i2 = canonical_integral(2, prev.a, prev.sigma, dzeta, z);
  const double di1 = -z / (prev.sigma * dzeta * dzeta);
  const double di2 = -2.0 * z * z / (prev.a * dzeta * dzeta * dzeta) + 1.0 / (prev.a * dzeta * dzeta);

  ThetaValue out;
  out.value = scale * (c2 * i2 + (c1 - 2.0 * d_c2) * i1 + dd_c2 - d_c1);
  out.d_dtau = scale * (c2 * di2 + (c1 - 2.0 * d_c2) * di1);
  return out;
}

double reconstruct_increment(double L, double x_prev, double x_cur, int rho, double sigma_prev) {
  const double anchor = rho ? x_prev : 2.0 * L - x_prev;
  return (x_cur - anchor) / sigma_prev;
}

}  // namespace

double canonical_integral(int ell, double a_prev, double sigma_prev, double dzeta, double z) {
  switch (ell) {
    case 1:
      return z / (sigma_prev * dzeta);
    case 2:
      return z * z / (a_prev * dzeta * dzeta) - 1.0 / (a_prev * dzeta);
    default:
      throw std::invalid_argument("canonical_integral: order must be 1 or 2");
  }
}

double theta_i(const DiffusionModel& model, double x_prev, double x_cur, int rho, double dzeta,
               double lambda_poisson) {
  const Coefficients prev = model.at(x_prev);
  const Coefficients cur = model.at(x_cur);
  const double z = reconstruct_increment(model.L(), x_prev, x_cur, rho, prev.sigma);
  return theta_from_increment(prev, cur, model.L(), x_cur, rho, dzeta, z, lambda_poisson).value;
}

double theta_i_dtau(const DiffusionModel& model, double x_prev, double x_cur, int rho, double dzeta,
                    double lambda_poisson) {
  const Coefficients prev = model.at(x_prev);
  const Coefficients cur = model.at(x_cur);
  const double z = reconstruct_increment(model.L(), x_prev, x_cur, rho, prev.sigma);
  return theta_from_increment(prev, cur, model.L(), x_cur, rho, dzeta, z, lambda_poisson).d_dtau;
}

double theta_hat(const DiffusionModel& model, double x_n) { return model.a(model.L()) / model.a(x_n); }

double gig_time_score(double lambda_poisson, double tau, double delta_sq, double a_prev) {
  return lambda_poisson + 0.5 / tau - delta_sq / (2.0 * a_prev * tau * tau);
}

double time_dual(double G, double dG, double tau, double delta_sq, double a_prev) {
  return G * (0.5 / tau - delta_sq / (2.0 * a_prev * tau * tau)) - dG;
}

double time_dual_theta(const DiffusionModel& model, double x_prev, double x_cur, int rho, double tau,
                       double lambda_poisson) {
  const Coefficients prev = model.at(x_prev);
  const Coefficients cur = model.at(x_cur);
  const double z = reconstruct_increment(model.L(), x_prev, x_cur, rho, prev.sigma);
  const ThetaValue th = theta_from_increment(prev, cur, model.L(), x_cur, rho, tau, z, lambda_poisson);
  const double delta = prev.sigma * z;
  return time_dual(th.value, th.d_dtau, tau, delta * delta, prev.a);
}

double i_hat_last(double a_n, double delta_last_sq, double tau_bar) {
  return 1.5 / tau_bar - delta_last_sq / (2.0 * a_n * tau_bar * tau_bar);
}

double assemble_theta_I(const WeightSet& w, int i) {
  const int n = static_cast<int>(w.theta.size());
  double value = w.theta_hat;
  if (value == 0.0) return 0.0;
  for (int j = i + 1; j <= n; ++j) {
    value *= w.theta[j - 1];
    if (value == 0.0) return 0.0;
  }
  value *= (i <= n) ? w.i_time_theta[i - 1] : w.i_hat_last;
  if (value == 0.0) return 0.0;
  for (int l = 1; l < i && l <= n; ++l) {
    value *= w.theta[l - 1];
    if (value == 0.0) return 0.0;
  }
  return value;
}

void assemble_weights(const ChainPath& path, const DiffusionModel& model, double lambda_poisson, WeightSet& out) {
  const int n = path.n;
  const double L = model.L();
  out.theta.assign(n, 0.0);
  out.i_time_theta.assign(n, 0.0);
  out.theta_I.assign(n + 1, 0.0);

  Coefficients prev = model.at(path.states[0]);
  for (int i = 1; i <= n; ++i) {
    const Coefficients cur = model.at(path.states[i]);
    const double tau = path.tau[i - 1];
    const ThetaValue th = theta_from_increment(prev, cur, L, path.states[i], path.rho[i - 1], tau,
                                               path.z_incr[i - 1], lambda_poisson);
    out.theta[i - 1] = th.value;
    out.i_time_theta[i - 1] = time_dual(th.value, th.d_dtau, tau, path.delta_sq[i - 1], prev.a);
    prev = cur;
  }

  const double a_L = model.a(L);
  const double a_n = prev.a;
  out.theta_hat = a_L / a_n;
  out.gamma = 1.0;
  for (int i = 0; i < n && out.gamma != 0.0; ++i) out.gamma *= out.theta[i];
  out.gamma_bar = (a_L - a_n) / a_n * out.gamma;
  out.i_hat_last = i_hat_last(a_n, path.delta_sq[n], path.tau_bar);
  for (int i = 1; i <= n + 1; ++i) out.theta_I[i - 1] = assemble_theta_I(out, i);
  out.M = malliavin_variance(path);
}

WeightSet assemble_weights(const ChainPath& path, const DiffusionModel& model, double lambda_poisson) {
  WeightSet w;
  assemble_weights(path, model, lambda_poisson, w);
  return w;
}

}  // namespace exit_ibp
