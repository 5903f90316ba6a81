#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exit_ibp {

/// Coefficient values of dX = b(X) dt + sigma(X) dW at one point, a = sigma^2.
struct Coefficients {
  double b = 0.0;
  double b_prime = 0.0;
  double a = 1.0;
  double a_prime = 0.0;
  double a_double_prime = 0.0;
  double sigma = 1.0;
};

/// Exit problem geometry: barrier L, start x0 > L, horizon T > 0.
struct ExitProblem {
  double L = 0.0;
  double x0 = 1.0;
  double T = 1.0;
};

/// One-dimensional uniformly elliptic diffusion killed at a level below its
/// starting point. Immutable once built; cheap to copy and safe to share.
class DiffusionModel {
public:
  using ScalarFn = std::function<double(double)>;

  /// b(y) = drift, a(y) = diffusion (> 0).
  static DiffusionModel constant(double drift, double diffusion, ExitProblem problem);

  /// b(y) = beta tanh(y), a(y) = alpha0 + alpha1 tanh(y), alpha0 > alpha1 >= 0.
  static DiffusionModel affine_tanh(double beta, double alpha0, double alpha1, ExitProblem problem);

  /// Coefficients supplied as separate functions. The derivatives are taken
  /// on trust; validate_assumptions() checks them.
  static DiffusionModel custom(ScalarFn b, ScalarFn b_prime, ScalarFn a, ScalarFn a_prime,
                               ScalarFn a_double_prime, double a_lower, double a_upper,
                               ExitProblem problem, std::string name = "custom");

  /// Build a named preset ("constant" with params b, a; "tanh" with params
  /// beta, alpha0, alpha1). Missing params take the reference defaults.
  /// Throws std::invalid_argument on unknown names or parameters.
  static DiffusionModel from_preset(const std::string& name, const std::map<std::string, double>& params,
                                    ExitProblem problem);

  Coefficients at(double y) const { return eval_(y); }
  double b(double y) const { return eval_(y).b; }
  double a(double y) const { return eval_(y).a; }
  double sigma(double y) const { return eval_(y).sigma; }

  double a_lower() const { return a_lower_; }
  double a_upper() const { return a_upper_; }
  double L() const { return problem_.L; }
  double x0() const { return problem_.x0; }
  double T() const { return problem_.T; }
  const ExitProblem& problem() const { return problem_; }

  /// True when b = 0 and a is constant, i.e. X is a scaled Brownian motion
  /// and every per-interval weight vanishes identically.
  bool is_brownian() const { return brownian_; }
  /// True when b and a are both constant.
  bool has_constant_coefficients() const { return constant_; }
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }

  DiffusionModel with_problem(ExitProblem problem) const;

private:
  DiffusionModel() = default;

  std::function<Coefficients(double)> eval_;
  double a_lower_ = 1.0;
  double a_upper_ = 1.0;
  ExitProblem problem_;
  bool brownian_ = false;
  bool constant_ = false;
  std::string name_;
  std::map<std::string, double> params_;
};

/// Free-function spelling of DiffusionModel::at, matching the other
/// per-operation entry points.
Coefficients coefficients_at(const DiffusionModel& model, double y);

struct ValidationReport {
  bool passed = true;
  std::string diagnostic;
  std::optional<double> first_violation;
};

/// Evenly spaced grid on [L - 5, x0 + 5].
std::vector<double> default_validation_grid(const DiffusionModel& model, int points = 2001);

/// Checks ellipticity bounds, x0 > L, T > 0, and the supplied derivatives
/// against central differences (step 1e-5, tolerance 1e-5 (1 + |derivative|)).
ValidationReport validate_assumptions(const DiffusionModel& model, std::span<const double> grid);
ValidationReport validate_assumptions(const DiffusionModel& model);

}  // namespace exit_ibp
