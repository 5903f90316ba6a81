#include "exit_ibp/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace exit_ibp {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params, std::initializer_list<const char*> known,
                    const std::string& preset) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("model preset '" + preset + "' has no parameter '" + key + "'");
  }
}

}  // namespace

DiffusionModel DiffusionModel::constant(double drift, double diffusion, ExitProblem problem) {
  if (!(diffusion > 0.0)) throw std::invalid_argument("constant model: diffusion must be positive");
  DiffusionModel m;
  const Coefficients c{drift, 0.0, diffusion, 0.0, 0.0, std::sqrt(diffusion)};
  m.eval_ = [c](double) { return c; };
  m.a_lower_ = m.a_upper_ = diffusion;
  m.problem_ = problem;
  m.brownian_ = (drift == 0.0);
  m.constant_ = true;
  m.name_ = "constant";
  m.params_ = {{"b", drift}, {"a", diffusion}};
  return m;
}

DiffusionModel DiffusionModel::affine_tanh(double beta, double alpha0, double alpha1, ExitProblem problem) {
  if (!(alpha0 > alpha1) || alpha1 < 0.0) {
    throw std::invalid_argument("tanh model: need alpha0 > alpha1 >= 0");
  }
  DiffusionModel m;
  m.eval_ = [beta, alpha0, alpha1](double y) {
    const double t = std::tanh(y);
    const double sech2 = 1.0 - t * t;
    Coefficients c;
    c.b = beta * t;
    c.b_prime = beta * sech2;
    c.a = alpha0 + alpha1 * t;
    c.a_prime = alpha1 * sech2;
    c.a_double_prime = -2.0 * alpha1 * sech2 * t;
    c.sigma = std::sqrt(c.a);
    return c;
  };
  m.a_lower_ = alpha0 - alpha1;
  m.a_upper_ = alpha0 + alpha1;
  m.problem_ = problem;
  m.brownian_ = (beta == 0.0 && alpha1 == 0.0);
  m.constant_ = m.brownian_;
  m.name_ = "tanh";
  m.params_ = {{"beta", beta}, {"alpha0", alpha0}, {"alpha1", alpha1}};
  return m;
}

DiffusionModel DiffusionModel::custom(ScalarFn b, ScalarFn b_prime, ScalarFn a, ScalarFn a_prime,
                                      ScalarFn a_double_prime, double a_lower, double a_upper,
                                      ExitProblem problem, std::string name) {
  DiffusionModel m;
  m.eval_ = [b, b_prime, a, a_prime, a_double_prime](double y) {
    Coefficients c;
    c.b = b(y);
    c.b_prime = b_prime(y);
    c.a = a(y);
    c.a_prime = a_prime(y);
    c.a_double_prime = a_double_prime(y);
    c.sigma = c.a > 0.0 ? std::sqrt(c.a) : std::nan("");
    return c;
  };
  m.a_lower_ = a_lower;
  m.a_upper_ = a_upper;
  m.problem_ = problem;
  m.name_ = std::move(name);
  return m;
}

DiffusionModel DiffusionModel::from_preset(const std::string& name, const std::map<std::string, double>& params,
                                           ExitProblem problem) {
  if (name == "constant") {
    reject_unknown(params, {"b", "a"}, name);
    return constant(param_or(params, "b", 0.0), param_or(params, "a", 1.0), problem);
  }
  if (name == "tanh") {
    reject_unknown(params, {"beta", "alpha0", "alpha1"}, name);
    return affine_tanh(param_or(params, "beta", 0.1), param_or(params, "alpha0", 1.0),
                       param_or(params, "alpha1", 0.5), problem);
  }
  throw std::invalid_argument("unknown model preset '" + name + "'");
}

DiffusionModel DiffusionModel::with_problem(ExitProblem problem) const {
  DiffusionModel m = *this;
  m.problem_ = problem;
  return m;
}

Coefficients coefficients_at(const DiffusionModel& model, double y) { return model.at(y); }

std::vector<double> default_validation_grid(const DiffusionModel& model, int points) {
  const double lo = model.L() - 5.0;
  const double hi = model.x0() + 5.0;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  }
  return grid;
}

ValidationReport validate_assumptions(const DiffusionModel& model, std::span<const double> grid) {
  auto fail = [](std::string msg, std::optional<double> where) {
    return ValidationReport{false, std::move(msg), where};
  };
  if (grid.empty()) return fail("validation grid is empty", std::nullopt);
  if (!(model.x0() > model.L())) return fail("start x0 must lie strictly above the level L", std::nullopt);
  if (!(model.T() > 0.0)) return fail("horizon T must be positive", std::nullopt);
  if (!(model.a_lower() > 0.0) || model.a_upper() < model.a_lower()) {
    return fail("ellipticity bounds must satisfy 0 < a_lower <= a_upper", std::nullopt);
  }

  constexpr double h = 1e-5;
  constexpr double tol = 1e-5;
  auto mismatch = [&](double fd, double analytic) { return std::abs(fd - analytic) > tol * (1.0 + std::abs(analytic)); };

  for (const double y : grid) {
    const Coefficients c = model.at(y);
    std::ostringstream where;
    where << " at y = " << y;
    if (!(c.a >= model.a_lower()) || !(c.a <= model.a_upper())) {
      return fail("ellipticity violated: a(y) = " + std::to_string(c.a) + where.str(), y);
    }
    if (!std::isfinite(c.b) || !std::isfinite(c.b_prime) || !std::isfinite(c.a_prime) ||
        !std::isfinite(c.a_double_prime)) {
      return fail("non-finite coefficient" + where.str(), y);
    }
    const Coefficients up = model.at(y + h);
    const Coefficients down = model.at(y - h);
    if (mismatch((up.b - down.b) / (2.0 * h), c.b_prime)) {
      return fail("derivative inconsistency: b_prime disagrees with finite difference of b" + where.str(), y);
    }
    if (mismatch((up.a - down.a) / (2.0 * h), c.a_prime)) {
      return fail("derivative inconsistency: a_prime disagrees with finite difference of a" + where.str(), y);
    }
    if (mismatch((up.a_prime - down.a_prime) / (2.0 * h), c.a_double_prime)) {
      return fail("derivative inconsistency: a_double_prime disagrees with finite difference of a_prime" +
                      where.str(),
                  y);
    }
  }
  return {};
}

ValidationReport validate_assumptions(const DiffusionModel& model) {
  const auto grid = default_validation_grid(model);
  return validate_assumptions(model, grid);
}

}  // namespace exit_ibp
