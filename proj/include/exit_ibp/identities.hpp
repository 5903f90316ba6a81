#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exit_ibp/model.hpp"

namespace exit_ibp {

/// Dense polynomial, coefficient k multiplies x^k.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

  double operator()(double x) const;
  Polynomial derivative() const;
  Polynomial operator*(const Polynomial& other) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }

private:
  std::vector<double> c_;
};

/// Outcome of one operator identity check over many random instances.
struct IdentityCheck {
  std::string name;
  double max_error = 0.0;  ///< worst error in the check's own metric
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// E[f^{(ell)}(X) H(X)] = E[f(X) I^ell(H)(X)] for one reflected Gaussian step,
/// random cubic f and H, ell in {1, 2}, Gauss-Hermite quadrature. Tolerance
/// 1e-8 relative to max(1, |lhs|).
IdentityCheck check_gaussian_duality(std::uint64_t seed, int instances = 100);
/// I^2(H1 H2) = I^2(H1) H2 - 2 I(H1) H2' + H1 H2'' at random points, 1e-10.
IdentityCheck check_extraction_formula(std::uint64_t seed, int instances = 100);
/// I^ell(1) = (-1)^ell H_ell(a dzeta, sigma z), ell in {1, 2}, 1e-12.
IdentityCheck check_hermite_link(std::uint64_t seed, int instances = 100);
/// The per-interval weight of the tanh preset (x_prev = 1, dzeta = 0.5,
/// lambda = 1) is the Gaussian dual of the generator difference:
/// E[c2 f'' + c1 f'] = E[f K] with K the bracket of theta. 1e-8.
IdentityCheck check_weight_duality();
/// int f' G q = int f (G score - G') q for the GIG jump-time law q, G the
/// tanh weight as a function of its jump time, f a smooth bump. 1e-6.
IdentityCheck check_time_duality(std::uint64_t seed, int instances = 10);
/// int f' p = int f I_hat(1) p for the Levy law of the final interval. 1e-6.
IdentityCheck check_final_interval_duality(std::uint64_t seed, int instances = 10);
/// Analytic d theta / d tau against a central difference with step 1e-6 tau,
/// 1e-6 relative, on random tanh inputs.
IdentityCheck check_theta_time_derivative(std::uint64_t seed, int instances = 100);

/// Every check above, in order.
std::vector<IdentityCheck> run_identity_checks(std::uint64_t seed);

/// Empirical E|theta^i| and E|I_i(theta^i)| binned by |Delta_i| (dyadic bins),
/// each divided by its envelope 1 + |Delta|^3 and 1 + |Delta|^-2 + |Delta|^5.
struct DegenerationBin {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
  double mean_abs_theta = 0.0;
  double mean_abs_time_dual = 0.0;
  double theta_ratio = 0.0;
  double time_dual_ratio = 0.0;
};

struct DegenerationReport {
  std::vector<DegenerationBin> bins;
  /// Largest ratio over bins with at least 100 samples divided by the
  /// smallest; a bounded spread is consistent with the envelopes.
  double theta_spread = 0.0;
  double time_dual_spread = 0.0;
  std::string table() const;
};

DegenerationReport space_degeneration_diagnostics(const DiffusionModel& model, double lambda_poisson,
                                                  std::int64_t n_paths, std::uint64_t seed);

}  // namespace exit_ibp
