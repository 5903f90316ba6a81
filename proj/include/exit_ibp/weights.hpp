#pragma once

#include <vector>

#include "exit_ibp/chain.hpp"
#include "exit_ibp/model.hpp"

namespace exit_ibp {

/// Every per-path weight of the exit-time representation and its
/// time-integration-by-parts variant. Index i in the vectors is jump i + 1.
struct WeightSet {
  std::vector<double> theta;         ///< n per-interval weights
  double theta_hat = 1.0;            ///< a(L) / a(x_n)
  double gamma = 1.0;                ///< product of theta, 1 when n = 0
  double gamma_bar = 0.0;            ///< (a(L) - a_n) / a_n * gamma
  std::vector<double> i_time_theta;  ///< time-dual operator applied to theta
  double i_hat_last = 0.0;           ///< final-interval dual of 1
  std::vector<double> theta_I;       ///< n + 1 assembled derivative weights
  double M = 0.0;                    ///< Malliavin variance
};

/// I^ell(1) for one Gaussian step, ell in {1, 2}:
///   ell = 1: z / (sigma_prev dzeta)
///   ell = 2: z^2 / (a_prev dzeta^2) - 1 / (a_prev dzeta)
/// where z is the Brownian increment of the step.
double canonical_integral(int ell, double a_prev, double sigma_prev, double dzeta, double z);

/// Per-interval weight for the step x_prev -> x_cur with reflection bit rho
/// over a time step dzeta. Zero when x_cur <= L.
double theta_i(const DiffusionModel& model, double x_prev, double x_cur, int rho, double dzeta,
               double lambda_poisson);

/// d theta_i / d dzeta with the spatial increment held fixed.
double theta_i_dtau(const DiffusionModel& model, double x_prev, double x_cur, int rho, double dzeta,
                    double lambda_poisson);

/// a(L) / a(x_n).
double theta_hat(const DiffusionModel& model, double x_n);

/// Score of the GIG(2 lambda, 2 lambda mu^2, 1/2) jump-time law,
///   -d/dtau log q(tau) = lambda + 1/(2 tau) - delta^2 / (2 a_prev tau^2),
/// with delta^2 / a_prev = 2 lambda mu^2. The dual of d/dtau against q is
/// G -> G * score - G'.
double gig_time_score(double lambda_poisson, double tau, double delta_sq, double a_prev);

/// Dual of d/dtau_i for the jump time tau_i on the event {N_T = n}. On that
/// event the jump times are uniform on the simplex given the spatial chain,
/// so the exponential factor of the GIG law cancels and only the Gaussian
/// kernel remains: G -> G (1/(2 tau) - delta^2 / (2 a_prev tau^2)) - G'.
double time_dual(double G, double dG, double tau, double delta_sq, double a_prev);

/// time_dual applied to theta_i as a function of its own jump time.
double time_dual_theta(const DiffusionModel& model, double x_prev, double x_cur, int rho, double tau,
                       double lambda_poisson);

/// 3 / (2 tau_bar) - delta_last^2 / (2 a_n tau_bar^2), the negative log
/// derivative of the Levy density of the final interval.
double i_hat_last(double a_n, double delta_last_sq, double tau_bar);

/// Fills every WeightSet field for a path of either scheme. Products are
/// formed left to right in the documented order and stop at the first zero
/// factor.
WeightSet assemble_weights(const ChainPath& path, const DiffusionModel& model, double lambda_poisson);
void assemble_weights(const ChainPath& path, const DiffusionModel& model, double lambda_poisson,
                      WeightSet& out);

/// theta_hat * prod_{j > i} theta_j * I_i(theta_i) * prod_{l < i} theta_l for
/// i = 1..n (one-based), and theta_hat * I_hat * prod_l theta_l for i = n + 1.
double assemble_theta_I(const WeightSet& w, int i);

}  // namespace exit_ibp
